#include "resd/logic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace resd {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::L: return "L";
    case Kind::S2: return "S";
    case Kind::R: return "R";
    case Kind::P1: return "P";
    case Kind::P2: return "P2";
    case Kind::S4: return "S4";
    case Kind::T: return "T";
    case Kind::Q: return "Q";
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::Bp: return "B'";
  }
  return "?";
}

bool kind_from_name(const std::string& s, Kind& out) {
  static const std::pair<const char*, Kind> table[] = {
      {"L", Kind::L},   {"S", Kind::S2},  {"R", Kind::R},  {"P", Kind::P1},
      {"P2", Kind::P2}, {"S4", Kind::S4}, {"T", Kind::T},  {"Q", Kind::Q},
      {"A", Kind::A},   {"B", Kind::B},   {"B'", Kind::Bp}};
  for (auto& [name, k] : table) {
    if (s == name) {
      out = k;
      return true;
    }
  }
  return false;
}

std::string Atom::str() const {
  std::ostringstream os;
  os << kind_name(kind);
  int ar = kind_arity(kind);
  if (ar > 0) {
    os << "_";
    for (int i = 0; i < ar; ++i) {
      if (i) os << ",";
      os << idx[i];
    }
  }
  return os.str();
}

std::string Literal::str() const { return (pos ? "" : "~") + atom.str(); }

bool Term::contains(const Literal& l) const {
  return std::binary_search(lits.begin(), lits.end(), l);
}

std::string Term::str() const {
  std::string s;
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) s += "&";
    s += lits[i].str();
  }
  return s.empty() ? "true" : s;
}

std::optional<Term> make_term(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i)
    if (lits[i].atom == lits[i - 1].atom) return std::nullopt;  // complementary pair
  return Term{std::move(lits)};
}

Term negate_to_term(const std::vector<Literal>& disjunction_lits) {
  std::vector<Literal> out;
  out.reserve(disjunction_lits.size());
  for (const auto& l : disjunction_lits) out.push_back(l.negated());
  auto t = make_term(std::move(out));
  assert(t.has_value());
  return *t;
}

bool DnfLine::is_clause() const {
  for (const auto& t : terms)
    if (t.width() != 1) return false;
  return true;
}

size_t DnfLine::width() const {
  size_t w = 0;
  for (const auto& t : terms) w = std::max(w, t.width());
  return w;
}

bool DnfLine::has_term(const Term& t) const {
  return std::binary_search(terms.begin(), terms.end(), t);
}

bool DnfLine::has_singleton(const Literal& l) const { return has_term(Term{{l}}); }

std::string DnfLine::str() const {
  if (terms.empty()) return "[]";
  std::string s;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " | ";
    s += terms[i].str();
  }
  return s;
}

DnfLine normalize(const DnfLine& line) {
  std::vector<Term> ts;
  ts.reserve(line.terms.size());
  for (const auto& t : line.terms) {
    auto nt = make_term(t.lits);
    if (!nt) continue;  // contradictory conjunction
    assert(!nt->lits.empty() && "constant-true term cannot be stored in a line");
    ts.push_back(std::move(*nt));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return DnfLine{std::move(ts)};
}

DnfLine line_from_terms(std::vector<std::optional<Term>> ts) {
  DnfLine l;
  for (auto& t : ts)
    if (t) l.terms.push_back(std::move(*t));
  return normalize(l);
}

DnfLine clause_of(std::vector<Literal> lits) {
  DnfLine l;
  l.terms.reserve(lits.size());
  for (auto& x : lits) l.terms.push_back(Term{{x}});
  return normalize(l);
}

Restricted restrict_line(const DnfLine& line, const Assignment& rho) {
  Restricted out;
  for (const auto& t : line.terms) {
    std::vector<Literal> kept;
    bool dead = false;
    for (const auto& l : t.lits) {
      auto v = rho.value(l.atom);
      if (!v) {
        kept.push_back(l);
      } else if (*v != l.pos) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (kept.empty()) {
      out.satisfied = true;
      out.line = DnfLine{};
      return out;
    }
    out.line.terms.push_back(Term{std::move(kept)});
  }
  out.line = normalize(out.line);
  return out;
}

bool eval_line(const DnfLine& line, const Assignment& sigma) {
  for (const auto& t : line.terms) {
    bool all = true;
    for (const auto& l : t.lits) {
      auto v = sigma.value(l.atom);
      if (!v || *v != l.pos) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool falsified(const DnfLine& line, const Assignment& rho) {
  for (const auto& t : line.terms) {
    bool killed = false;
    for (const auto& l : t.lits) {
      auto v = rho.value(l.atom);
      if (v && *v != l.pos) {
        killed = true;
        break;
      }
    }
    if (!killed) return false;
  }
  return true;
}

}  // namespace resd
