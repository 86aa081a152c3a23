#include "resd/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace resd {
namespace oracle {

void Budget::check_atoms(size_t atoms) const {
  if (atoms > max_atoms) {
    std::ostringstream os;
    os << "instance has " << atoms << " atoms, budget allows " << max_atoms;
    throw BudgetExceeded(os.str());
  }
}

namespace {

// int-encoded view of an instance: literal = +-(var+1), var in [0, V)
struct IntLines {
  int vars = 0;
  std::vector<std::vector<std::vector<int>>> lines;  // line -> term -> lits

  static IntLines from(const CnfInstance& inst) {
    IntLines out;
    out.vars = inst.atlas.size();
    out.lines.reserve(inst.lines.size());
    for (const auto& l : inst.lines) {
      std::vector<std::vector<int>> terms;
      for (const auto& t : l.terms) {
        std::vector<int> lits;
        for (const auto& lit : t.lits) {
          int v = inst.atlas.encode(lit.atom);
          lits.push_back(lit.pos ? v : -v);
        }
        terms.push_back(std::move(lits));
      }
      out.lines.push_back(std::move(terms));
    }
    return out;
  }
};

// value array: 0 unknown, 1 true, -1 false
int lit_value(const std::vector<int8_t>& val, int lit) {
  int v = val[static_cast<size_t>(std::abs(lit) - 1)];
  if (v == 0) return 0;
  return (lit > 0) == (v > 0) ? 1 : -1;
}

bool line_satisfied(const std::vector<std::vector<int>>& line, const std::vector<int8_t>& val) {
  for (const auto& t : line) {
    bool all = true;
    for (int l : t)
      if (lit_value(val, l) != 1) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

// 1 satisfied, -1 falsified, 0 open
int line_status(const std::vector<std::vector<int>>& line, const std::vector<int8_t>& val) {
  bool any_open = false;
  for (const auto& t : line) {
    bool dead = false, all = true;
    for (int l : t) {
      int v = lit_value(val, l);
      if (v == -1) {
        dead = true;
        break;
      }
      if (v == 0) all = false;
    }
    if (dead) continue;
    if (all) return 1;
    any_open = true;
  }
  return any_open ? 0 : -1;
}

struct Dpll {
  const IntLines& F;
  size_t budget;
  size_t nodes = 0;
  int weight_cap = -1;  // -1: unbounded

  explicit Dpll(const IntLines& f, size_t b, int cap) : F(f), budget(b), weight_cap(cap) {}

  // returns true if satisfiable within the weight cap
  bool sat(std::vector<int8_t>& val, int trues) {
    if (++nodes > budget) throw BudgetExceeded("search budget exceeded");
    // propagate: a line whose only hope is a single live term forces it
    bool changed = true;
    std::vector<std::pair<int, int8_t>> trail;
    while (changed) {
      changed = false;
      for (const auto& line : F.lines) {
        int live = 0;
        const std::vector<int>* last = nullptr;
        bool satisfied = false;
        for (const auto& t : line) {
          bool dead = false, all = true;
          for (int l : t) {
            int v = lit_value(val, l);
            if (v == -1) {
              dead = true;
              break;
            }
            if (v == 0) all = false;
          }
          if (dead) continue;
          if (all) {
            satisfied = true;
            break;
          }
          ++live;
          last = &t;
        }
        if (satisfied) continue;
        if (live == 0) {
          for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
          return false;
        }
        if (live == 1) {
          for (int l : *last) {
            if (lit_value(val, l) == 0) {
              int var = std::abs(l) - 1;
              trail.push_back({var, val[static_cast<size_t>(var)]});
              val[static_cast<size_t>(var)] = l > 0 ? 1 : -1;
              if (l > 0) ++trues;
              changed = true;
            }
          }
        }
      }
      if (weight_cap >= 0 && trues > weight_cap) {
        for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
        return false;
      }
    }
    if (weight_cap >= 0) {
      // disjoint open lines whose every live term still needs a positive
      // literal each cost at least one more true
      int need = 0;
      std::vector<uint8_t> taken(val.size(), 0);
      for (const auto& line : F.lines) {
        bool satisfied = false, costly = true;
        std::vector<int> atoms;
        for (const auto& t : line) {
          bool dead = false, all = true, pos_open = false;
          for (int l : t) {
            int v = lit_value(val, l);
            if (v == -1) {
              dead = true;
              break;
            }
            if (v == 0) {
              all = false;
              if (l > 0) pos_open = true;
              atoms.push_back(std::abs(l) - 1);
            }
          }
          if (dead) continue;
          if (all) {
            satisfied = true;
            break;
          }
          if (!pos_open) costly = false;
        }
        if (satisfied || !costly) continue;
        bool overlap = false;
        for (int a : atoms)
          if (taken[static_cast<size_t>(a)]) overlap = true;
        if (overlap) continue;
        for (int a : atoms) taken[static_cast<size_t>(a)] = 1;
        ++need;
      }
      if (trues + need > weight_cap) {
        for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
        return false;
      }
    }
    // pick a branching literal from the first open line
    int branch_var = -1;
    for (const auto& line : F.lines) {
      int st = line_status(line, val);
      if (st == 1) continue;
      if (st == -1) {
        for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
        return false;
      }
      for (const auto& t : line) {
        for (int l : t)
          if (lit_value(val, l) == 0) {
            branch_var = std::abs(l) - 1;
            break;
          }
        if (branch_var >= 0) break;
      }
      if (branch_var >= 0) break;
    }
    if (branch_var < 0) {
      // every line satisfied
      bool ok = weight_cap < 0 || trues <= weight_cap;
      if (!ok)
        for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
      if (ok) return true;
      return false;
    }
    // false branch first: cheaper under a weight cap
    val[static_cast<size_t>(branch_var)] = -1;
    if (sat(val, trues)) return true;
    val[static_cast<size_t>(branch_var)] = 1;
    if (weight_cap < 0 || trues + 1 <= weight_cap) {
      if (sat(val, trues + 1)) return true;
    }
    val[static_cast<size_t>(branch_var)] = 0;
    for (auto& [var, old] : trail) val[static_cast<size_t>(var)] = old;
    return false;
  }
};

}  // namespace

bool brute_unsat(const CnfInstance& inst, Budget budget) {
  budget.check_atoms(inst.atom_count());
  IntLines F = IntLines::from(inst);
  int v = F.vars;
  std::vector<int8_t> val(static_cast<size_t>(v), 0);
  uint64_t limit = 1ULL << v;
  for (uint64_t mask = 0; mask < limit; ++mask) {
    for (int i = 0; i < v; ++i) val[static_cast<size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
    bool all = true;
    for (const auto& line : F.lines)
      if (!line_satisfied(line, val)) {
        all = false;
        break;
      }
    if (all) return false;
  }
  return true;
}

namespace {

// conflict-driven search for clause-only instances; the branching-free
// rows of the relativized families defeat plain backtracking
class Cdcl {
public:
  Cdcl(int vars, std::vector<std::vector<int>> clauses, size_t budget)
      : nvars_(vars), budget_(budget) {
    val_.assign(static_cast<size_t>(vars) + 1, 0);
    reason_.assign(static_cast<size_t>(vars) + 1, -1);
    level_.assign(static_cast<size_t>(vars) + 1, 0);
    activity_.assign(static_cast<size_t>(vars) + 1, 0.0);
    watches_.assign(2 * static_cast<size_t>(vars) + 2, {});
    for (auto& c : clauses) add_clause(std::move(c));
  }

  // true = satisfiable
  bool solve() {
    if (conflict_at_root_) return false;
    if (!propagate_from(0)) return false;
    for (;;) {
      if (++nodes_ > budget_) throw BudgetExceeded("search budget exceeded");
      int confl = propagate();
      if (confl >= 0) {
        if (level_now_ == 0) return false;
        std::vector<int> learnt;
        int back = analyze(confl, learnt);
        backtrack(back);
        int id = add_clause(std::move(learnt));
        if (id == -1) return false;            // conflicting at the root
        if (id >= 0) enqueue(clauses_[static_cast<size_t>(id)][0], id);
        decay();
      } else {
        int v = pick();
        if (v == 0) return true;
        ++level_now_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(-v, -1);  // negative phase first
      }
    }
  }

private:
  int nvars_;
  size_t budget_;
  size_t nodes_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // literal -> clause ids
  std::vector<int8_t> val_;
  std::vector<int> reason_, level_;
  std::vector<double> activity_;
  std::vector<int> trail_, trail_lim_;
  size_t qhead_ = 0;
  int level_now_ = 0;
  double inc_ = 1.0;
  bool conflict_at_root_ = false;

  static size_t widx(int lit) {
    return 2 * static_cast<size_t>(std::abs(lit)) + (lit > 0 ? 0 : 1);
  }
  int lit_val(int lit) const {
    int8_t v = val_[static_cast<size_t>(std::abs(lit))];
    if (v == 0) return 0;
    return (lit > 0) == (v > 0) ? 1 : -1;
  }

  int add_clause(std::vector<int> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int l : c)
      if (std::find(c.begin(), c.end(), -l) != c.end()) return -2;  // tautology, never used
    if (c.empty()) {
      conflict_at_root_ = true;
      return -1;
    }
    if (c.size() == 1) {
      int l = c[0];
      if (lit_val(l) == -1) {
        conflict_at_root_ = true;
        return -1;
      }
      if (lit_val(l) == 0) {
        val_[static_cast<size_t>(std::abs(l))] = l > 0 ? 1 : -1;
        level_[static_cast<size_t>(std::abs(l))] = 0;
        reason_[static_cast<size_t>(std::abs(l))] = -1;
        trail_.push_back(l);
      }
      return -2;
    }
    // place an unfalsified pair first when learning mid-flight
    auto by_level = [&](int a, int b) {
      int va = lit_val(a), vb = lit_val(b);
      if ((va != -1) != (vb != -1)) return va != -1;
      return level_[static_cast<size_t>(std::abs(a))] > level_[static_cast<size_t>(std::abs(b))];
    };
    std::sort(c.begin(), c.end(), by_level);
    int id = static_cast<int>(clauses_.size());
    watches_[widx(c[0])].push_back(id);
    watches_[widx(c[1])].push_back(id);
    clauses_.push_back(std::move(c));
    return id;
  }

  void enqueue(int lit, int reason) {
    val_[static_cast<size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    level_[static_cast<size_t>(std::abs(lit))] = level_now_;
    reason_[static_cast<size_t>(std::abs(lit))] = reason;
    trail_.push_back(lit);
  }

  bool propagate_from(size_t start) {
    qhead_ = start;
    return propagate() < 0;
  }

  // returns a conflicting clause id or -1
  int propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      int falsified = -lit;
      auto& ws = watches_[widx(falsified)];
      std::vector<int> keep;
      keep.reserve(ws.size());
      for (size_t wi = 0; wi < ws.size(); ++wi) {
        int id = ws[wi];
        auto& c = clauses_[static_cast<size_t>(id)];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_val(c[0]) == 1) {
          keep.push_back(id);
          continue;
        }
        bool moved = false;
        for (size_t i = 2; i < c.size(); ++i) {
          if (lit_val(c[i]) != -1) {
            std::swap(c[1], c[i]);
            watches_[widx(c[1])].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        keep.push_back(id);
        if (lit_val(c[0]) == -1) {
          for (size_t rest = wi + 1; rest < ws.size(); ++rest) keep.push_back(ws[rest]);
          ws = std::move(keep);
          return id;
        }
        enqueue(c[0], id);
      }
      ws = std::move(keep);
    }
    return -1;
  }

  void bump(int v) {
    activity_[static_cast<size_t>(v)] += inc_;
    if (activity_[static_cast<size_t>(v)] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      inc_ *= 1e-100;
    }
  }
  void decay() { inc_ *= 1.05; }

  int analyze(int confl, std::vector<int>& learnt) {
    learnt.clear();
    std::vector<uint8_t> seen(static_cast<size_t>(nvars_) + 1, 0);
    int counter = 0;
    int lit = 0;
    size_t idx = trail_.size();
    learnt.push_back(0);  // slot for the asserting literal
    int cid = confl;
    do {
      const auto& c = clauses_[static_cast<size_t>(cid)];
      for (int q : c) {
        if (q == lit) continue;
        int v = std::abs(q);
        if (seen[static_cast<size_t>(v)] || level_[static_cast<size_t>(v)] == 0) continue;
        seen[static_cast<size_t>(v)] = 1;
        bump(v);
        if (level_[static_cast<size_t>(v)] == level_now_)
          ++counter;
        else
          learnt.push_back(q);
      }
      while (!seen[static_cast<size_t>(std::abs(trail_[idx - 1]))]) --idx;
      lit = trail_[--idx];
      seen[static_cast<size_t>(std::abs(lit))] = 0;
      cid = reason_[static_cast<size_t>(std::abs(lit))];
      --counter;
    } while (counter > 0);
    learnt[0] = -lit;
    int back = 0;
    for (size_t i = 1; i < learnt.size(); ++i)
      back = std::max(back, level_[static_cast<size_t>(std::abs(learnt[i]))]);
    return back;
  }

  void backtrack(int to_level) {
    while (!trail_lim_.empty() && level_now_ > to_level) {
      int mark = trail_lim_.back();
      trail_lim_.pop_back();
      while (static_cast<int>(trail_.size()) > mark) {
        int l = trail_.back();
        trail_.pop_back();
        val_[static_cast<size_t>(std::abs(l))] = 0;
      }
      --level_now_;
    }
    qhead_ = trail_.size();
  }

  int pick() {
    int best = 0;
    double besta = -1.0;
    for (int v = 1; v <= nvars_; ++v)
      if (val_[static_cast<size_t>(v)] == 0 && activity_[static_cast<size_t>(v)] > besta) {
        besta = activity_[static_cast<size_t>(v)];
        best = v;
      }
    return best;
  }
};

}  // namespace

bool dpll_unsat(const CnfInstance& inst, size_t node_budget) {
  IntLines F = IntLines::from(inst);
  if (inst.clause_only()) {
    std::vector<std::vector<int>> clauses;
    clauses.reserve(F.lines.size());
    for (const auto& line : F.lines) {
      std::vector<int> c;
      for (const auto& t : line) c.push_back(t[0]);
      clauses.push_back(std::move(c));
    }
    Cdcl solver(F.vars, std::move(clauses), node_budget);
    return !solver.solve();
  }
  std::vector<int8_t> val(static_cast<size_t>(F.vars), 0);
  Dpll solver(F, node_budget, -1);
  return !solver.sat(val, 0);
}

bool unsat(const CnfInstance& inst) {
  if (inst.atom_count() <= 24) return brute_unsat(inst);
  return dpll_unsat(inst);
}

std::optional<int> min_weight_sat(const CnfInstance& inst, int weight_cap, size_t node_budget) {
  IntLines F = IntLines::from(inst);
  int cap_limit = weight_cap >= 0 ? weight_cap : F.vars;
  for (int w = 0; w <= cap_limit; ++w) {
    std::vector<int8_t> val(static_cast<size_t>(F.vars), 0);
    Dpll solver(F, node_budget, w);
    if (solver.sat(val, 0)) return w;
  }
  if (weight_cap >= 0) {
    // larger weights not probed; certify unsat before reporting infinity
    if (!dpll_unsat(inst, node_budget)) throw BudgetExceeded("weight cap too small for instance");
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// minimal decision trees for the search problem
// ---------------------------------------------------------------------------

namespace {

struct Disj {
  std::vector<int> lits;  // sorted

  bool operator<(const Disj& o) const { return lits < o.lits; }
  bool operator==(const Disj& o) const { return lits == o.lits; }
};

struct SearchRecord {
  std::vector<int8_t> val;   // unit facts
  std::vector<Disj> pending; // remembered non-unit disjunctions

  std::string key() const {
    std::string s(val.begin(), val.end());
    for (const auto& d : pending) {
      s.push_back(127);
      for (int l : d.lits) {
        s.push_back(static_cast<char>(l & 0xff));
        s.push_back(static_cast<char>((l >> 8) & 0xff));
      }
    }
    return s;
  }
};

class MinTree {
public:
  MinTree(const IntLines& f, int d, std::optional<int> param_k, size_t budget)
      : F(f), d_(d), param_k_(param_k), budget_(budget) {}

  TreeSize run() {
    SearchRecord rec;
    rec.val.assign(static_cast<size_t>(F.vars), 0);
    // iterative deepening; exact values are memoized, failed searches keep
    // a lower-bound certificate against re-exploration
    for (int target = 0; target <= 4 * F.vars + 8; ++target) {
      int got = best(rec, target + 1);
      if (got <= target) {
        TreeSize out;
        out.internal = got;
        out.leaves = got + 1;
        return out;
      }
    }
    throw BudgetExceeded("no finishing tree within the depth cap");
  }

private:
  const IntLines& F;
  int d_;
  std::optional<int> param_k_;
  size_t budget_;
  size_t nodes_ = 0;
  std::unordered_map<std::string, int> exact_;
  std::unordered_map<std::string, int> at_least_;

  bool term_killed(const SearchRecord& rec, const std::vector<int>& t) const {
    for (int l : t)
      if (lit_value(rec.val, l) == -1) return true;
    // a pending disjunction all of whose literals negate literals of t
    for (const auto& dj : rec.pending) {
      bool sub = !dj.lits.empty();
      for (int l : dj.lits)
        if (std::find(t.begin(), t.end(), -l) == t.end()) {
          sub = false;
          break;
        }
      if (sub) return true;
    }
    return false;
  }

  bool line_inactive(const SearchRecord& rec, const std::vector<std::vector<int>>& line) const {
    // some term fully conceded true: the line can never be falsified
    for (const auto& t : line) {
      bool all = true;
      for (int l : t)
        if (lit_value(rec.val, l) != 1) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  }

  bool at_sink(const SearchRecord& rec) const {
    if (param_k_) {
      int trues = 0;
      for (int8_t v : rec.val)
        if (v == 1) ++trues;
      if (trues >= *param_k_ + 1) return true;
    }
    for (const auto& line : F.lines) {
      bool refuted = true;
      for (const auto& t : line)
        if (!term_killed(rec, t)) {
          refuted = false;
          break;
        }
      if (refuted) return true;
    }
    return false;
  }

  // atoms still worth querying: undecided and inside an active line
  std::vector<int> candidate_atoms(const SearchRecord& rec) const {
    std::vector<bool> seen(static_cast<size_t>(F.vars), false);
    std::vector<int> out;
    for (const auto& line : F.lines) {
      if (line_inactive(rec, line)) continue;
      for (const auto& t : line)
        for (int l : t) {
          int v = std::abs(l) - 1;
          if (!seen[static_cast<size_t>(v)] && rec.val[static_cast<size_t>(v)] == 0) {
            seen[static_cast<size_t>(v)] = true;
            out.push_back(v);
          }
        }
    }
    if (param_k_) {
      // weight axioms keep every undecided atom relevant
      for (int v = 0; v < F.vars; ++v)
        if (!seen[static_cast<size_t>(v)] && rec.val[static_cast<size_t>(v)] == 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void add_disj(SearchRecord& rec, std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    if (lits.size() == 1) {
      int l = lits[0];
      rec.val[static_cast<size_t>(std::abs(l) - 1)] = l > 0 ? 1 : -1;
      return;
    }
    Disj d{std::move(lits)};
    auto it = std::lower_bound(rec.pending.begin(), rec.pending.end(), d);
    if (it == rec.pending.end() || !(*it == d)) rec.pending.insert(it, d);
  }

  // exact value when < bound, otherwise something >= bound
  int best(const SearchRecord& rec, int bound) {
    if (bound <= 0) return INT_MAX / 4;
    if (at_sink(rec)) return 0;
    auto key = rec.key();
    if (auto it = exact_.find(key); it != exact_.end()) return it->second;
    if (auto it = at_least_.find(key); it != at_least_.end() && it->second >= bound)
      return INT_MAX / 4;
    if (++nodes_ > budget_) throw BudgetExceeded("decision-tree search budget exceeded");

    int best_here = INT_MAX / 4;
    auto try_children = [&](SearchRecord&& yes, SearchRecord&& no) {
      int limit = std::min(bound, best_here);
      int cy = best(yes, limit - 1);
      if (cy >= INT_MAX / 8) return;
      int cn = best(no, limit - 1 - cy);
      if (cn >= INT_MAX / 8) return;
      best_here = std::min(best_here, 1 + cy + cn);
    };
    auto try_query = [&](const std::vector<int>& lits) {
      SearchRecord yes = rec;
      add_disj(yes, lits);
      SearchRecord no = rec;
      for (int l : lits) no.val[static_cast<size_t>(std::abs(l) - 1)] = l > 0 ? -1 : 1;
      try_children(std::move(yes), std::move(no));
    };

    std::vector<int> cand = candidate_atoms(rec);
    for (size_t a = 0; a < cand.size(); ++a) {
      int va = cand[a] + 1;
      try_query({va});
      try_query({-va});
    }
    if (d_ >= 2) {
      for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = a + 1; b < cand.size(); ++b) {
          int va = cand[a] + 1, vb = cand[b] + 1;
          try_query({va, vb});
          try_query({va, -vb});
          try_query({-va, vb});
          try_query({-va, -vb});
        }
    }
    if (d_ >= 3) {
      for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = a + 1; b < cand.size(); ++b)
          for (size_t c = b + 1; c < cand.size(); ++c)
            for (int mask = 0; mask < 8; ++mask)
              try_query({(mask & 1) ? cand[a] + 1 : -(cand[a] + 1),
                         (mask & 2) ? cand[b] + 1 : -(cand[b] + 1),
                         (mask & 4) ? cand[c] + 1 : -(cand[c] + 1)});
    }
    // query-split of a pending disjunction
    for (size_t pi = 0; pi < rec.pending.size(); ++pi) {
      const auto& dj = rec.pending[pi];
      size_t sz = dj.lits.size();
      for (uint32_t mask = 1; mask + 1 < (1u << sz); ++mask) {
        std::vector<int> left, right;
        for (size_t b = 0; b < sz; ++b)
          ((mask >> b) & 1 ? left : right).push_back(dj.lits[b]);
        SearchRecord lrec = rec, rrec = rec;
        lrec.pending.erase(lrec.pending.begin() + static_cast<long>(pi));
        rrec.pending.erase(rrec.pending.begin() + static_cast<long>(pi));
        add_disj(lrec, left);
        add_disj(rrec, right);
        try_children(std::move(lrec), std::move(rrec));
      }
    }
    if (best_here < bound) {
      exact_[key] = best_here;
    } else {
      auto& lb = at_least_[key];
      lb = std::max(lb, bound);
    }
    return best_here;
  }
};

}  // namespace

TreeSize min_tree_refutation_size(const CnfInstance& inst, int d, std::optional<int> param_k,
                                  size_t node_budget) {
  IntLines F = IntLines::from(inst);
  MinTree mt(F, d, param_k, node_budget);
  return mt.run();
}

// ---------------------------------------------------------------------------
// representation height and covers
// ---------------------------------------------------------------------------

namespace {

// -1 falsified, 1 satisfied, 0 open
int dnf_const(const DnfLine& f) {
  if (f.terms.empty()) return -1;
  for (const auto& t : f.terms)
    if (t.lits.empty()) return 1;
  return 0;
}

int height_rec(const DnfLine& f, std::map<DnfLine, int>& memo, size_t& nodes, size_t budget) {
  if (dnf_const(f) != 0) return 0;
  if (++nodes > budget) throw BudgetExceeded("height search budget exceeded");
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  std::set<Atom> atoms;
  for (const auto& t : f.terms)
    for (const auto& l : t.lits) atoms.insert(l.atom);
  int best = INT_MAX / 2;
  for (const auto& a : atoms) {
    Assignment hi, lo;
    hi.set(a, true);
    lo.set(a, false);
    auto up = restrict_line(f, hi);
    auto dn = restrict_line(f, lo);
    DnfLine fu = up.satisfied ? DnfLine{{Term{{}}}} : up.line;
    DnfLine fd = dn.satisfied ? DnfLine{{Term{{}}}} : dn.line;
    int h = 1 + std::max(height_rec(fu, memo, nodes, budget), height_rec(fd, memo, nodes, budget));
    best = std::min(best, h);
    if (best == 1) break;
  }
  memo[f] = best;
  return best;
}

int min_hitting_set(const std::vector<std::vector<int>>& sets) {
  // every set nonempty; exact branch and bound on the first uncovered set
  int best = INT_MAX / 2;
  std::vector<int> chosen;
  std::function<void(size_t)> rec = [&](size_t picked) {
    if (static_cast<int>(picked) >= best) return;
    // find first set not hit
    const std::vector<int>* open = nullptr;
    for (const auto& s : sets) {
      bool hit = false;
      for (int x : s)
        if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) {
          hit = true;
          break;
        }
      if (!hit) {
        open = &s;
        break;
      }
    }
    if (!open) {
      best = std::min(best, static_cast<int>(picked));
      return;
    }
    for (int x : *open) {
      chosen.push_back(x);
      rec(picked + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

int representation_height(const DnfLine& f, size_t node_budget) {
  std::map<DnfLine, int> memo;
  size_t nodes = 0;
  return height_rec(normalize(f), memo, nodes, node_budget);
}

int covering_number(const DnfLine& f) {
  if (f.terms.empty()) return 0;
  std::map<Atom, int> ids;
  std::vector<std::vector<int>> sets;
  for (const auto& t : f.terms) {
    std::vector<int> s;
    for (const auto& l : t.lits) {
      auto [it, fresh] = ids.insert({l.atom, static_cast<int>(ids.size())});
      (void)fresh;
      s.push_back(it->second);
    }
    sets.push_back(std::move(s));
  }
  return min_hitting_set(sets);
}

std::vector<int> mentioned_elements(const Term& t) {
  std::set<int> out;
  for (const auto& l : t.lits) {
    switch (l.atom.kind) {
      case Kind::R: out.insert(l.atom.idx[1]); break;            // R^p_i mentions i
      case Kind::L:
        out.insert(l.atom.idx[0]);
        out.insert(l.atom.idx[1]);
        break;
      case Kind::S2: out.insert(l.atom.idx[1]); break;           // S_{i,j} mentions j only
      default:
        for (int c = 0; c < kind_arity(l.atom.kind); ++c) out.insert(l.atom.idx[c]);
    }
  }
  return {out.begin(), out.end()};
}

int element_cover(const DnfLine& f) {
  if (f.terms.empty()) return 0;
  std::vector<std::vector<int>> sets;
  for (const auto& t : f.terms) sets.push_back(mentioned_elements(t));
  return min_hitting_set(sets);
}

}  // namespace oracle
}  // namespace resd
