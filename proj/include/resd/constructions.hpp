#pragma once

#include <string>
#include <vector>

#include "resd/families.hpp"
#include "resd/proof.hpp"

namespace resd {
namespace constructions {

struct SizeReport {
  std::string family;
  int d = 0, n = 0, k = 0;
  size_t size = 0;           // derivation-rule applications
  std::string claimed_form;  // e.g. "d*n^3"

  std::string csv_row() const;
  static std::string csv_header();
};

struct Emitted {
  CnfInstance instance;
  Refutation proof;
  SizeReport report;
};

// Stage-clause refutation of the relativized least-number family in
// Res(d+1); size O(d n^3).
Emitted refute_drlnp(int d, int n);

// Tree-like Res(1) refutation of the induction family; size O(n^2).
Emitted refute_ip(int n);

// Tree-like Res(d+1) refutation of the relativized induction family;
// size O(d n^2).
Emitted refute_drip(int d, int n);

// Tree-like Res(d+1) refutation of the vectorized relativized induction
// family, produced via a branching-program sweep; size O(n^{d+4}),
// O(n^4) at d=1.
Emitted refute_rvip(int d, int n);

// Parameterized tree-like Res(2) refutation of the choice system;
// uses exactly one parameterized axiom; size O(k n).
Emitted refute_sigma_pst(int n, int k);

struct Fit {
  double exponent = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least-squares slope of log(size) against log(n).
Fit fit_size(const std::vector<std::pair<int, size_t>>& sweep);

}  // namespace constructions
}  // namespace resd
