#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resd/families.hpp"
#include "resd/logic.hpp"

namespace resd {

enum class Rule { Axiom, ParamAxiom, AndIntro, Cut, WeakenAdd, WeakenDrop };

const char* rule_name(Rule r);
bool rule_from_name(const std::string& s, Rule& out);
int rule_premises(Rule r);
bool is_leaf_rule(Rule r);

// Annotated rule application. Witness contents by rule:
//   AndIntro    w1 = I1 (term in premise 0), w2 = I2 (term in premise 1)
//   Cut         w1 = I; premise pos_premise carries the literals of I as
//               singleton terms, the other premise carries the term ~I
//   WeakenAdd   w1 = the added term
//   WeakenDrop  w1 = kept literals, w2 = dropped literals (w1+w2 is a term
//               of the premise)
struct RuleApp {
  Rule rule = Rule::Axiom;
  std::array<int, 2> prem{-1, -1};
  std::vector<Literal> w1, w2;
  int pos_premise = 0;
};

struct ProofLine {
  DnfLine line;
  RuleApp app;
};

struct Refutation {
  int d = 1;                    // line width bound: this is Res(d)
  bool tree_like = false;       // claimed tree-likeness
  std::optional<int> param_k;   // parameterized mode weight bound
  std::string instance_name;
  std::vector<ProofLine> lines;

  size_t rule_count() const;
  int add(DnfLine line, RuleApp app) {
    lines.push_back({std::move(line), std::move(app)});
    return static_cast<int>(lines.size()) - 1;
  }
  int add_axiom(DnfLine line) { return add(std::move(line), RuleApp{Rule::Axiom}); }
};

struct CheckReport {
  bool valid = false;
  int fail_line = -1;
  std::string reason;
  size_t size = 0;  // number of derivation-rule applications
  std::map<Rule, size_t> rule_counts;
  size_t distinct_param_axioms = 0;

  std::string str() const;
};

CheckReport check(const CnfInstance& instance, const Refutation& proof);
bool verify_tree_like(const Refutation& proof);
// Number of distinct parameterized axiom lines. Throws if the proof does
// not check against the instance.
size_t count_param_axioms(const CnfInstance& instance, const Refutation& proof);

// Rule application helpers used by the construction emitters. Each returns
// the conclusion computed from the premises, mirroring what the checker
// will recompute.
DnfLine conclude_and_intro(const DnfLine& a, const DnfLine& b, const std::vector<Literal>& i1,
                           const std::vector<Literal>& i2);
DnfLine conclude_cut(const DnfLine& pos, const DnfLine& negside, const std::vector<Literal>& i);
DnfLine conclude_weaken_add(const DnfLine& p, const std::vector<Literal>& term);
DnfLine conclude_weaken_drop(const DnfLine& p, const std::vector<Literal>& kept,
                             const std::vector<Literal>& dropped);

// Seeded single-edit mutations for robustness tests: flip one literal,
// drop one witness element, or rewire one premise.
Refutation mutate(const Refutation& proof, uint64_t seed);

std::string proof_to_jsonl(const Refutation& proof, const VariableAtlas& atlas);
Refutation proof_from_jsonl(const std::string& text, const VariableAtlas& atlas);

}  // namespace resd
