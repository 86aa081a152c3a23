#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "resd/atoms.hpp"

namespace resd {

// A term is a conjunction of literals in canonical sorted order with
// distinct atoms. The empty term stands for the constant true and is
// never stored inside a line. Terms whose literal set would contain a
// complementary pair normalize to the constant false and are dropped
// from lines entirely.
struct Term {
  std::vector<Literal> lits;

  auto operator<=>(const Term&) const = default;
  size_t width() const { return lits.size(); }
  bool contains(const Literal& l) const;
  std::string str() const;
};

// Builds a canonical term from arbitrary literals. nullopt = constant false.
std::optional<Term> make_term(std::vector<Literal> lits);

Term negate_to_term(const std::vector<Literal>& disjunction_lits);

// Disjunction of terms; the empty line is the contradiction.
struct DnfLine {
  std::vector<Term> terms;

  auto operator<=>(const DnfLine&) const = default;
  bool empty() const { return terms.empty(); }
  bool is_clause() const;
  size_t width() const;
  bool has_term(const Term& t) const;
  bool has_singleton(const Literal& l) const;
  std::string str() const;
};

DnfLine normalize(const DnfLine& line);
DnfLine line_from_terms(std::vector<std::optional<Term>> ts);
DnfLine clause_of(std::vector<Literal> lits);

// Partial assignment; also the restriction object.
struct Assignment {
  std::unordered_map<uint64_t, bool> map;

  void set(const Atom& a, bool v) { map[a.key()] = v; }
  std::optional<bool> value(const Atom& a) const {
    auto it = map.find(a.key());
    if (it == map.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Atom& a) const { return map.count(a.key()) != 0; }
  size_t size() const { return map.size(); }
};

struct Restricted {
  bool satisfied = false;  // some term became constant true
  DnfLine line;            // meaningful only when !satisfied
};

Restricted restrict_line(const DnfLine& line, const Assignment& rho);

// Semantic truth under a total assignment (unset atoms default to false
// only if allow_partial; otherwise they must all be set).
bool eval_line(const DnfLine& line, const Assignment& sigma);

// True when every literal of the line's every term is decided and false.
bool falsified(const DnfLine& line, const Assignment& rho);

}  // namespace resd
