#include "resd/atlas.hpp"

#include <sstream>
#include <stdexcept>

namespace resd {

int KindRange::count() const {
  if (triangular) {
    int n = dims[0];
    return n * (n - 1) / 2;
  }
  int c = 1;
  for (int d : dims) c *= d;
  return c;
}

VariableAtlas::VariableAtlas(std::vector<KindRange> ranges) : ranges_(std::move(ranges)) {
  int base = 0;
  for (const auto& r : ranges_) {
    bases_.push_back(base);
    base += r.count();
  }
  total_ = base;
}

bool VariableAtlas::contains(const Atom& a) const {
  for (const auto& r : ranges_) {
    if (r.kind != a.kind) continue;
    int ar = kind_arity(a.kind);
    if (r.triangular) {
      int n = r.dims[0];
      return a.idx[0] >= 1 && a.idx[1] > a.idx[0] && a.idx[1] <= n;
    }
    bool ok = true;
    for (int i = 0; i < ar; ++i)
      if (a.idx[i] < 1 || a.idx[i] > r.dims[i]) ok = false;
    return ok;
  }
  return false;
}

int VariableAtlas::encode(const Atom& a) const {
  for (size_t ri = 0; ri < ranges_.size(); ++ri) {
    const auto& r = ranges_[ri];
    if (r.kind != a.kind) continue;
    if (r.triangular) {
      int n = r.dims[0];
      int i = a.idx[0], j = a.idx[1];
      if (i < 1 || j <= i || j > n) throw std::out_of_range("atom outside atlas range: " + a.str());
      // strict upper triangle, row-major
      int off = (i - 1) * n - i * (i - 1) / 2 + (j - i);
      return bases_[ri] + off;
    }
    int ar = kind_arity(a.kind);
    int off = 0;
    for (int d = 0; d < ar; ++d) {
      int v = a.idx[d];
      if (v < 1 || v > r.dims[d]) throw std::out_of_range("atom outside atlas range: " + a.str());
      off = off * r.dims[d] + (v - 1);
    }
    return bases_[ri] + off + 1;
  }
  throw std::out_of_range("atom kind not in atlas: " + a.str());
}

Atom VariableAtlas::decode(int v) const {
  if (v < 1 || v > total_) throw std::out_of_range("atlas index out of range");
  size_t ri = 0;
  while (ri + 1 < ranges_.size() && bases_[ri + 1] < v) ++ri;
  const auto& r = ranges_[ri];
  int off = v - bases_[ri] - 1;
  Atom a;
  a.kind = r.kind;
  if (r.triangular) {
    int n = r.dims[0];
    int i = 1;
    int rowlen = n - 1;
    while (off >= rowlen) {
      off -= rowlen;
      ++i;
      --rowlen;
    }
    a.idx[0] = static_cast<uint16_t>(i);
    a.idx[1] = static_cast<uint16_t>(i + 1 + off);
    return a;
  }
  int ar = kind_arity(r.kind);
  for (int d = ar - 1; d >= 0; --d) {
    a.idx[d] = static_cast<uint16_t>(off % r.dims[d] + 1);
    off /= r.dims[d];
  }
  return a;
}

std::string VariableAtlas::manifest() const {
  std::ostringstream os;
  for (size_t ri = 0; ri < ranges_.size(); ++ri) {
    const auto& r = ranges_[ri];
    os << "c atlas " << kind_name(r.kind) << " " << ri << " " << bases_[ri] + 1 << " "
       << (r.triangular ? "triu" : "box");
    for (int d : r.dims) os << " " << d;
    os << "\n";
  }
  return os.str();
}

}  // namespace resd
