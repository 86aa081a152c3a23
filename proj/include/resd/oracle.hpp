#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "resd/families.hpp"
#include "resd/logic.hpp"

namespace resd {
namespace oracle {

struct Budget {
  size_t max_atoms = 24;
  size_t max_nodes = 50'000'000;

  void check_atoms(size_t atoms) const;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration over all total assignments.
bool brute_unsat(const CnfInstance& inst, Budget budget = {});

// Independent backtracking search with line-level propagation.
bool dpll_unsat(const CnfInstance& inst, size_t node_budget = 50'000'000);

// Dispatch: enumeration when small, search otherwise.
bool unsat(const CnfInstance& inst);

// Minimal number of true variables over satisfying assignments;
// nullopt when the instance is unsatisfiable.
std::optional<int> min_weight_sat(const CnfInstance& inst, int weight_cap = -1,
                                  size_t node_budget = 50'000'000);

struct TreeSize {
  int internal = 0;  // query nodes
  int leaves = 0;
  int total() const { return internal + leaves; }
};

// Exact minimum decision-tree size solving the search problem with
// d-disjunction queries (query-new plus query-split, no forgetting).
// With param_k set, records holding k+1 true units may close at a
// parameterized-axiom leaf.
TreeSize min_tree_refutation_size(const CnfInstance& inst, int d,
                                  std::optional<int> param_k = std::nullopt,
                                  size_t node_budget = 20'000'000);

// Minimum height of a decision tree strongly representing the DNF.
int representation_height(const DnfLine& f, size_t node_budget = 20'000'000);

// Minimum variable cover: every term contains a covered variable.
int covering_number(const DnfLine& f);

// Minimum element cover under the mention relation: R^p_i mentions i,
// L_{i,j} mentions i and j, S_{i,j} mentions j only.
int element_cover(const DnfLine& f);
std::vector<int> mentioned_elements(const Term& t);

}  // namespace oracle
}  // namespace resd
