#pragma once

#include <string>
#include <vector>

#include "resd/atoms.hpp"

namespace resd {

// Index domain of one kind inside an atlas. Shapes:
//   box  — every coordinate ranges over [1..dims[i]]
//   triu — two coordinates with 1 <= i < j <= dims[0] (strict upper triangle)
struct KindRange {
  Kind kind;
  std::vector<int> dims;
  bool triangular = false;

  int count() const;
};

// Dense bijection between atoms and positive integers, ordered by
// (kind rank, index tuple). The rank order is family specific and is
// emitted as DIMACS comments so exports stay self-describing.
class VariableAtlas {
public:
  VariableAtlas() = default;
  explicit VariableAtlas(std::vector<KindRange> ranges);

  int encode(const Atom& a) const;  // throws std::out_of_range
  Atom decode(int v) const;         // throws std::out_of_range
  int size() const { return total_; }
  bool contains(const Atom& a) const;

  const std::vector<KindRange>& ranges() const { return ranges_; }

  // One "c atlas <kind> <rank> <base> <shape> <dims...>" line per kind.
  std::string manifest() const;

private:
  std::vector<KindRange> ranges_;
  std::vector<int> bases_;
  int total_ = 0;
};

}  // namespace resd
