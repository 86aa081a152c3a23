#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resd/families.hpp"
#include "resd/logic.hpp"
#include "resd/proof.hpp"
#include "resd/rng.hpp"

namespace resd {
namespace games {

// ----- branching d-programs ------------------------------------------------

// A d-disjunction, canonical sorted literal list.
struct Disjunction {
  std::vector<Literal> lits;

  auto operator<=>(const Disjunction&) const = default;
  size_t width() const { return lits.size(); }
};

Disjunction make_disjunction(std::vector<Literal> lits);

// Vertex label: a d-CNF. Disjunctions are interned in the program pool;
// a record is the sorted id set.
struct Record {
  std::vector<int32_t> ids;

  auto operator<=>(const Record&) const = default;
  bool has(int32_t id) const;
  Record with(int32_t id) const;
  Record without(int32_t id) const;
};

enum class BpKind { QueryNew, QuerySplit, Forget, ForgetWiden, Sink };

struct BpNode {
  Record record;
  BpKind kind = BpKind::Sink;
  // QueryNew: query; children yes/no.
  // QuerySplit: query/query2 are the two parts; their union must be a
  //   disjunction of the record; children yes (part 1) / no (part 2).
  int32_t query = -1, query2 = -1;
  int yes = -1, no = -1;
  // Forget: drop `dropped` ids. ForgetWiden: replace widen_from by
  // widen_from + widen_extra.
  int child = -1;
  std::vector<int32_t> dropped;
  int32_t widen_from = -1, widen_extra = -1;
  // Sink: the instance line falsified (or a parameterized clause).
  DnfLine sink_line;
  bool sink_is_param = false;
};

struct BranchingProgram {
  int d = 1;                        // query and record width bound
  std::vector<Disjunction> pool;
  std::vector<BpNode> nodes;        // node 0 is the source; children have larger ids

  int32_t intern(Disjunction dj);
  const Disjunction& disj(int32_t id) const { return pool[static_cast<size_t>(id)]; }

  size_t sink_count() const;
  std::vector<DnfLine> sink_multiset() const;
  bool is_tree() const;

private:
  std::map<Disjunction, int32_t> interned_;
};

struct BpReport {
  bool valid = false;
  int fail_node = -1;
  std::string reason;
  size_t queries = 0, sinks = 0;
};

BpReport bp_validate(const BranchingProgram& bp, const CnfInstance& inst,
                     std::optional<int> param_k = std::nullopt);

// Reverse the program into a refutation and back. Sink lines map to axiom
// leaves; weakening bookkeeping may add lines but the sink multiset is
// preserved in both directions.
Refutation bp_to_refutation(const BranchingProgram& bp, const CnfInstance& inst);
BranchingProgram refutation_to_bp(const Refutation& proof);

// Sweep program refuting the relativized induction family in a
// (d+1)-program: questions ~R_i v ~P_i descending, witness rows on the
// false branches.
BranchingProgram induction_program(const CnfInstance& drip_instance);

// Same shape for the vectorized family: questions ~R_i v ~P_{i,j}
// descending over (i, j), 4-ary witness rows on false branches.
BranchingProgram vectorized_induction_program(const CnfInstance& drvip_instance);

// ----- adversary strategies ------------------------------------------------

enum class Variant { RLNP, RIP, RVIP };

// element status codes
enum : int {
  EL_BELOW = 0,   // at or below the source (RIP) / passed (RVIP)
  EL_FRESH = 1,
  EL_BUSY = 2,    // busy, no true commitment
  EL_RTRUE = 3,   // RVIP: R_i conceded true
  EL_PTRUE = 4,   // RVIP: some P_{i,j} conceded true
};

// concrete game state: conceded assignment plus structural bookkeeping
struct GameState {
  Variant variant = Variant::RIP;
  int n = 0, d = 1, k = 0;
  Assignment conceded;
  std::vector<int> status;      // indexed by element, 1..n
  int source = 1;
  int source_witness = 0;       // RVIP: j with R_src & P_{src,j} conceded
  int true_choices = 0;         // free choices answered true
  int free_choices = 0;         // free choices issued

  int free_above_source() const;
};

GameState initial_state(Variant v, int n, int d, int k);

struct AnswerResult {
  bool free_choice = false;
  bool forced_value = false;     // meaningful when !free_choice
  GameState next_true;           // state after true (valid if free or forced_value)
  GameState next_false;          // state after false
  bool no_op = false;            // query already decided by concessions
};

// Answer one query (a disjunction of at most d literals; single literals
// for the base games). Applies all prescribed side effects.
AnswerResult adversary_answer(const GameState& s, const Disjunction& query);

bool terminal(const GameState& s);

// True if the conceded assignment falsifies some instance line.
bool caught(const GameState& s, const CnfInstance& inst);

struct MinimaxResult {
  long long internal = 0;  // query nodes
  long long leaves = 0;
  long long total = 0;
  size_t states = 0;
};

// Exact minimum transcript-tree size over Prover policies against the
// fixed adversary; memoized on the quotient state.
MinimaxResult min_tree_size_vs_adversary(Variant variant, int n, int d, int k = 0,
                                         size_t state_budget = 10'000'000);

// DP solution of T(p,q) >= T(p+1,q) + T(p,q+1) + 1 with zero boundary at
// p >= k or q >= n-2-k.
long long rvip_bound(int n, int k);

long long fibonacci(int m);  // 1, 1, 2, 3, 5, ...
double rho_root(int d);      // largest real root of x^{d+1} - x - 1

// ----- the width game on the least-number family ----------------------------

struct WidthState {
  int m = 0;                       // universe size
  std::vector<int> part;           // 1..m: 0 free, 1 witness, 2 busy
  std::vector<int> busy_order;     // total order on busy, bottom first
  std::vector<int> witness_for;    // witness_for[b] = w, 0 if none
  std::vector<Atom> remembered;    // Prover's current record
  Assignment conceded;
  bool contradiction = false;

  int busy_count() const;
  int free_count() const;
};

WidthState width_initial(int m);

struct WidthMove {
  bool forget = false;
  Atom atom;
};

using WidthProver = std::function<WidthMove(const WidthState&, Rng&)>;

struct WidthTranscript {
  bool contradiction = false;
  int busy_at_contradiction = 0;
  int max_busy = 0;
  int steps = 0;
};

// Least-number game on m elements: the adversary keeps busy / witness /
// free sets with a consistent order; a contradiction needs the free set
// to drain first.
WidthTranscript rlnp_width_game(int m, const WidthProver& prover, uint64_t seed, int max_steps);
void width_step(WidthState& s, const WidthMove& move);

WidthMove random_width_prover(const WidthState& s, Rng& rng);

// ----- random-play soundness harness ----------------------------------------

struct PlayStats {
  int plays = 0;
  int caught_before_terminal = 0;
  int terminal_reached = 0;
};

PlayStats random_plays(Variant v, const CnfInstance& inst, int plays, uint64_t seed);

std::string transcript_json(Variant v, const CnfInstance& inst, uint64_t seed, int max_steps);

}  // namespace games
}  // namespace resd
