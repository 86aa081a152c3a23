#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resd/families.hpp"
#include "resd/graph.hpp"
#include "resd/logic.hpp"

namespace resd {
namespace restrictions {

// provenance codes for sampled values
enum class Step : uint8_t {
  Keep = 0,      // pinned values (R_n and friends)
  RCoins = 1,
  LCoins = 2,
  SCoins = 3,
  SDiag = 4,     // S_{j,j} for chaotic j, denied
  SCross = 5,    // S from chaotic into live, denied
  Pivot = 6,     // the distinguished element i0
  PiMap = 7,     // bijection-driven values inside the chaotic part
};

enum class SamplerKind { LiveChaotic, LiveChaoticGraph, Weighted };

// One sampled restriction in structured form. Values are materialized
// lazily; evaluation against single atoms needs no full expansion.
struct RestrictionSample {
  SamplerKind kind = SamplerKind::LiveChaotic;
  int n = 0, d = 1, k = 0;
  std::vector<uint8_t> live;   // 1..n: element in the live part R
  bool inconsistent = false;   // some totality clause was denied completely
  int i0 = 0;                  // Weighted sampler pivot
  // dense value tables; 0 unset, 1 true, -1 false
  std::vector<int8_t> rval;    // (p-1)*n + (i-1)
  std::vector<int8_t> lval;    // (i-1)*n + (j-1)
  std::vector<int8_t> sval;    // (i-1)*n + (j-1)
  std::vector<int> pi;         // Weighted: pi[j] = i over the chaotic part, else 0

  std::optional<bool> value(const Atom& a) const;
  Assignment materialize(int d_planes) const;
  std::vector<int> live_elements() const;
  std::vector<int> chaotic_elements() const;
  size_t live_count() const;
};

RestrictionSample sample_rlnp(int n, uint64_t seed);
RestrictionSample sample_drlnp(int d, int n, const Graph& g, uint64_t seed);
// n must be a perfect square >= 16
RestrictionSample sample_param(int n, int k, uint64_t seed);

// busy elements of a clause over the (relativized) least-number atlas:
// R^p_i, L_{i,j}, L_{j,i} and S_{j,i} identify i; S_{i,j} does not
int busy_count(const DnfLine& clause);
bool is_big_clause(const DnfLine& clause, int n);

struct McReport {
  uint64_t trials = 0;
  uint64_t survived = 0;
  double rate = 0.0;
  double wilson_lo = 0.0, wilson_hi = 0.0;
  double bound = 0.0;
  double sigma = 0.0;  // sqrt(bound*(1-bound)/trials)
  bool pass = false;   // rate <= bound + 3 sigma

  std::string str() const;
};

struct SamplerSpec {
  SamplerKind kind = SamplerKind::LiveChaotic;
  int n = 0, d = 1, k = 0;
  Graph graph;
};

// survival = the clause does not evaluate to true under the restriction;
// trials are seeded independently, so worker fan-out cannot change counts
McReport mc_kill_rate(const DnfLine& clause, const SamplerSpec& sampler, uint64_t trials,
                      uint64_t seed, std::optional<double> bound_override = std::nullopt,
                      int jobs = 1);

// rate of an arbitrary per-sample predicate, same interval bookkeeping
McReport mc_event_rate(const SamplerSpec& sampler, uint64_t trials, uint64_t seed, double bound,
                       const std::function<bool(const RestrictionSample&)>& event, int jobs = 1);

McReport finish_report(uint64_t trials, uint64_t survived, double bound);

// applies the sample to the generated instance; true when no line is
// outright falsified
bool consistent_against_instance(const RestrictionSample& s, const CnfInstance& inst);

// the surviving lines of the live part equal the plain least-number
// family on the live elements
bool residual_is_lnp(const RestrictionSample& s, const CnfInstance& inst);

}  // namespace restrictions
}  // namespace resd
