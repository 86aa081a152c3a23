#include <algorithm>
#include <cassert>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "resd/games.hpp"

namespace resd {
namespace games {

long long fibonacci(int m) {
  long long a = 1, b = 1;  // fib(0), fib(1)
  for (int i = 0; i < m; ++i) {
    long long c = a + b;
    a = b;
    b = c;
  }
  return a;
}

double rho_root(int d) {
  // largest real root of x^{d+1} - x - 1 in (1, 2)
  auto f = [&](double x) {
    double p = x;
    for (int i = 0; i < d; ++i) p *= x;
    return p - x - 1.0;
  };
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

long long rvip_bound(int n, int k) {
  if (k > n - 2) throw std::invalid_argument("rvip_bound needs k <= n-2");
  int pmax = k, qmax = n - 2 - k;
  std::vector<std::vector<long long>> B(static_cast<size_t>(pmax) + 1,
                                        std::vector<long long>(static_cast<size_t>(qmax) + 1, 0));
  for (int p = pmax - 1; p >= 0; --p)
    for (int q = qmax - 1; q >= 0; --q)
      B[static_cast<size_t>(p)][static_cast<size_t>(q)] =
          B[static_cast<size_t>(p) + 1][static_cast<size_t>(q)] +
          B[static_cast<size_t>(p)][static_cast<size_t>(q) + 1] + 1;
  return B[0][0];
}

// ---------------------------------------------------------------------------
// concrete adversary state
// ---------------------------------------------------------------------------

int GameState::free_above_source() const {
  int c = 0;
  for (int i = source + 1; i <= n; ++i)
    if (status[static_cast<size_t>(i)] == EL_FRESH) ++c;
  return c;
}

GameState initial_state(Variant v, int n, int d, int k) {
  GameState s;
  s.variant = v;
  s.n = n;
  s.d = d;
  s.k = k;
  s.status.assign(static_cast<size_t>(n) + 1, EL_FRESH);
  s.source = 1;
  s.status[1] = EL_BELOW;
  if (v == Variant::RIP) {
    for (int p = 1; p <= d; ++p) {
      s.conceded.set(atom(Kind::R, p, 1), true);
      s.conceded.set(atom(Kind::R, p, n), true);
    }
    s.conceded.set(atom(Kind::P1, 1), true);
    s.conceded.set(atom(Kind::P1, n), false);
    s.status[static_cast<size_t>(n)] = EL_BUSY;
    // the top block below n is committed up front
    for (int j = std::max(2, n - d); j <= n - 1; ++j) {
      s.status[static_cast<size_t>(j)] = EL_BUSY;
      for (int p = 1; p <= d; ++p) s.conceded.set(atom(Kind::R, p, j), true);
      s.conceded.set(atom(Kind::P1, j), false);
      s.conceded.set(atom(Kind::S2, j, n), true);
    }
  } else if (v == Variant::RVIP) {
    s.source_witness = 1;
    s.status[static_cast<size_t>(n)] = EL_BUSY;  // committed by units, never a witness target
  }
  return s;
}

bool terminal(const GameState& s) {
  if (s.variant == Variant::RIP) return s.free_above_source() == 0;
  if (s.variant == Variant::RVIP) return s.true_choices >= s.k || s.free_choices >= s.n - 2;
  return false;
}

bool caught(const GameState& s, const CnfInstance& inst) {
  for (const auto& line : inst.lines)
    if (falsified(line, s.conceded)) return true;
  return false;
}

namespace {

int element_of(const Atom& a) {
  if (a.kind == Kind::R) return a.idx[1];
  return a.idx[0];
}

// ----- relativized induction -----------------------------------------------

// retire element i: queried vars stay, the rest is completed consistently
void rip_complete(GameState& s, int i) {
  auto r_full_true = [&](int e) {
    for (int p = 1; p <= s.d; ++p) {
      auto v = s.conceded.value(atom(Kind::R, p, e));
      if (!v || !*v) return false;
    }
    return true;
  };
  // a conceded witness into a non-relativized element forbids completing
  // the relativization of i
  bool unsafe_witness = false;
  for (int l = i + 1; l <= s.n; ++l) {
    auto v = s.conceded.value(atom(Kind::S2, i, l));
    if (v && *v && !r_full_true(l)) unsafe_witness = true;
  }
  auto pv = s.conceded.value(atom(Kind::P1, i));
  bool keep_r_true = !unsafe_witness && !(pv && *pv);
  if (keep_r_true) {
    for (int p = 1; p <= s.d; ++p) {
      auto v = s.conceded.value(atom(Kind::R, p, i));
      if (v && !*v) keep_r_true = false;
    }
  }
  for (int p = 1; p <= s.d; ++p)
    if (!s.conceded.contains(atom(Kind::R, p, i))) s.conceded.set(atom(Kind::R, p, i), keep_r_true);
  if (!s.conceded.contains(atom(Kind::P1, i))) s.conceded.set(atom(Kind::P1, i), false);
  bool r_true = r_full_true(i);

  bool has_true_wit = false;
  for (int l = i + 1; l <= s.n; ++l) {
    auto v = s.conceded.value(atom(Kind::S2, i, l));
    if (v && *v) has_true_wit = true;
  }
  if (!has_true_wit) {
    // with the relativization of i complete, the witness must itself be
    // relativized; the top block guarantees a slot
    for (int l = s.n; l > i; --l) {
      if (s.conceded.contains(atom(Kind::S2, i, l))) continue;
      if (r_true && !r_full_true(l)) continue;
      s.conceded.set(atom(Kind::S2, i, l), true);
      has_true_wit = true;
      break;
    }
  }
  for (int l = i + 1; l <= s.n; ++l)
    if (!s.conceded.contains(atom(Kind::S2, i, l))) s.conceded.set(atom(Kind::S2, i, l), false);
  s.status[static_cast<size_t>(i)] = EL_BUSY;
}

void rip_pass_below(GameState& s, int i) {
  for (int p = 1; p <= s.d; ++p)
    if (!s.conceded.contains(atom(Kind::R, p, i))) s.conceded.set(atom(Kind::R, p, i), false);
  if (!s.conceded.contains(atom(Kind::P1, i))) s.conceded.set(atom(Kind::P1, i), false);
  rip_complete(s, i);
  s.status[static_cast<size_t>(i)] = EL_BELOW;
}

void rip_move_source(GameState& s, int j) {
  s.conceded.set(atom(Kind::S2, s.source, j), true);
  for (int l = s.source + 1; l <= s.n; ++l)
    if (!s.conceded.contains(atom(Kind::S2, s.source, l)))
      s.conceded.set(atom(Kind::S2, s.source, l), false);
  for (int p = 1; p <= s.d; ++p) s.conceded.set(atom(Kind::R, p, j), true);
  s.conceded.set(atom(Kind::P1, j), true);
  for (int i = s.source + 1; i < j; ++i)
    if (s.status[static_cast<size_t>(i)] == EL_FRESH) rip_pass_below(s, i);
  for (int i = s.source; i < j; ++i)
    if (s.status[static_cast<size_t>(i)] != EL_BELOW) s.status[static_cast<size_t>(i)] = EL_BELOW;
  s.status[static_cast<size_t>(s.source)] = EL_BELOW;
  s.source = j;
  s.status[static_cast<size_t>(j)] = EL_BELOW;
}

AnswerResult rip_answer(const GameState& s, const Disjunction& query) {
  AnswerResult res;
  if (query.width() == 0 || query.width() > static_cast<size_t>(s.d))
    throw std::invalid_argument("query width outside the variant bound");
  GameState base = s;

  // phase 1: settle literals already decided or implicitly defaulted;
  // witness slots of retired rows answer false on demand
  auto settled_value = [&](const Atom& a) -> std::optional<bool> {
    auto v = base.conceded.value(a);
    if (v) return v;
    int e = element_of(a);
    int st = base.status[static_cast<size_t>(e)];
    if (a.kind == Kind::S2 && e != base.source && (st == EL_BUSY || st == EL_BELOW)) {
      base.conceded.set(a, false);
      return false;
    }
    return std::nullopt;
  };

  std::vector<Literal> open;
  bool any_true = false;
  for (const auto& l : query.lits) {
    auto v = settled_value(l.atom);
    if (!v) {
      open.push_back(l);
    } else if (*v == l.pos) {
      any_true = true;
    }
  }
  auto forced_reply = [&](bool value) {
    res.free_choice = false;
    res.forced_value = value;
    if (value)
      res.next_true = base;
    else
      res.next_false = base;
    return res;
  };
  if (any_true) return forced_reply(true);
  if (open.empty()) return forced_reply(false);

  // phase 2: classify the open literals
  std::vector<Literal> src_pos, src_neg, elem_lits;
  std::vector<int> fresh_elems;
  for (const auto& l : open) {
    int e = element_of(l.atom);
    if (l.atom.kind == Kind::S2 && e == base.source) {
      (l.pos ? src_pos : src_neg).push_back(l);
    } else {
      elem_lits.push_back(l);
      if (std::find(fresh_elems.begin(), fresh_elems.end(), e) == fresh_elems.end())
        fresh_elems.push_back(e);
    }
  }
  std::sort(fresh_elems.begin(), fresh_elems.end());

  std::vector<int> frees;
  for (int i = base.source + 1; i <= base.n; ++i)
    if (base.status[static_cast<size_t>(i)] == EL_FRESH) frees.push_back(i);
  std::set<int> near(frees.begin(),
                     frees.begin() + std::min(frees.size(), static_cast<size_t>(base.d) + 1));

  // the totality of the source row must keep a live slot into a free
  // element; denying the last one forces the witness and moves the source
  auto live_free_slots = [&](const GameState& st) {
    std::vector<int> out;
    for (int j : frees) {
      if (st.status[static_cast<size_t>(j)] != EL_FRESH) continue;
      auto v = st.conceded.value(atom(Kind::S2, st.source, j));
      if (v && !*v) continue;
      out.push_back(j);
    }
    return out;
  };
  auto deny_or_move = [&](int j) -> std::optional<AnswerResult> {
    auto live = live_free_slots(base);
    if (base.status[static_cast<size_t>(j)] == EL_FRESH && live.size() == 1 && live[0] == j) {
      GameState t = base;
      rip_move_source(t, j);
      // the move decides the whole row; remaining literals resolve on re-entry
      return rip_answer(t, query);
    }
    base.conceded.set(atom(Kind::S2, base.source, j), false);
    return std::nullopt;
  };

  // far witness slots are denied outright
  std::vector<int> near_targets;
  for (const auto& l : src_pos) {
    int j = l.atom.idx[1];
    if (near.count(j)) {
      near_targets.push_back(j);
    } else {
      auto moved = deny_or_move(j);
      if (moved) return *moved;
    }
  }
  std::sort(near_targets.begin(), near_targets.end());

  // a negative witness literal is satisfied by denying the slot
  if (!src_neg.empty()) {
    auto moved = deny_or_move(src_neg.front().atom.idx[1]);
    if (moved) return *moved;
    return forced_reply(true);
  }
  if (near_targets.empty() && fresh_elems.empty()) return forced_reply(false);

  if (!near_targets.empty()) {
    int a = near_targets.front();
    GameState t = base;
    rip_move_source(t, a);
    // false branch: deny the queried slots, retire involved elements, land
    // on the lowest remaining slot outside the query
    GameState f = base;
    for (int j : near_targets) f.conceded.set(atom(Kind::S2, f.source, j), false);
    for (const auto& l : elem_lits)
      if (!f.conceded.contains(l.atom)) f.conceded.set(l.atom, !l.pos);
    for (int e : fresh_elems)
      if (f.status[static_cast<size_t>(e)] == EL_FRESH) rip_complete(f, e);
    int b = -1;
    for (int i = f.source + 1; i <= f.n; ++i) {
      if (f.status[static_cast<size_t>(i)] != EL_FRESH) continue;
      auto v = f.conceded.value(atom(Kind::S2, f.source, i));
      if (v && !*v) continue;
      b = i;
      break;
    }
    if (b < 0) {
      res.free_choice = false;
      res.forced_value = true;
      res.next_true = t;
      return res;
    }
    rip_move_source(f, b);
    res.free_choice = true;
    res.next_true = t;
    res.next_false = f;
    return res;
  }

  // phase 3: plain free-element query; if retiring the queried elements
  // would kill every live witness slot of the source, the source moves to
  // the highest such slot first and the query resolves from there
  {
    auto live = live_free_slots(base);
    bool covered = !live.empty();
    for (int j : live)
      if (std::find(fresh_elems.begin(), fresh_elems.end(), j) == fresh_elems.end())
        covered = false;
    if (covered) {
      GameState t = base;
      rip_move_source(t, live.back());
      return rip_answer(t, query);
    }
  }
  GameState t = base;
  {
    const Literal& sat = elem_lits.front();
    t.conceded.set(sat.atom, sat.pos);
    rip_complete(t, element_of(sat.atom));
  }
  GameState f = base;
  for (const auto& l : elem_lits)
    if (!f.conceded.contains(l.atom)) f.conceded.set(l.atom, !l.pos);
  for (int e : fresh_elems)
    if (f.status[static_cast<size_t>(e)] == EL_FRESH) rip_complete(f, e);
  res.free_choice = true;
  res.next_true = t;
  res.next_false = f;
  return res;
}

// ----- vectorized relativized induction -------------------------------------

int rvip_next_fresh(const GameState& s) {
  for (int i = s.source + 1; i <= s.n - 1; ++i)
    if (s.status[static_cast<size_t>(i)] == EL_FRESH) return i;
  return -1;
}

void rvip_pass_below(GameState& s, int i) {
  if (!s.conceded.contains(atom(Kind::R, 1, i))) s.conceded.set(atom(Kind::R, 1, i), false);
  for (int j = 1; j <= s.n; ++j) {
    bool has_true = false;
    for (int l = i + 1; l <= s.n && !has_true; ++l)
      for (int m = 1; m <= s.n && !has_true; ++m) {
        auto v = s.conceded.value(atom(Kind::S4, i, j, l, m));
        if (v && *v) has_true = true;
      }
    if (!has_true) {
      for (int l = s.n; l > i && !has_true; --l)
        for (int m = 1; m <= s.n && !has_true; ++m)
          if (!s.conceded.contains(atom(Kind::S4, i, j, l, m))) {
            s.conceded.set(atom(Kind::S4, i, j, l, m), true);
            has_true = true;
          }
    }
    if (!s.conceded.contains(atom(Kind::P2, i, j))) s.conceded.set(atom(Kind::P2, i, j), false);
  }
  s.status[static_cast<size_t>(i)] = EL_BELOW;
}

AnswerResult rvip_answer(const GameState& s, const Disjunction& query) {
  if (query.width() != 1)
    throw std::invalid_argument("the vectorized game answers single variables");
  AnswerResult res;
  const Literal& l = query.lits[0];
  const Atom& a = l.atom;
  int i = element_of(a);
  GameState base = s;

  auto forced = [&](bool var_value) {
    if (!base.conceded.contains(a)) base.conceded.set(a, var_value);
    res.free_choice = false;
    res.forced_value = var_value == l.pos;
    if (res.forced_value)
      res.next_true = base;
    else
      res.next_false = base;
    return res;
  };

  auto conceded_val = base.conceded.value(a);
  if (conceded_val) {
    res.no_op = true;
    return forced(*conceded_val);
  }

  if (a.kind == Kind::R && (i == 1 || i == s.n)) return forced(true);
  if (a.kind == Kind::P2 && i == 1 && a.idx[1] == 1) return forced(true);
  if (a.kind == Kind::P2 && i == s.n) return forced(false);

  if (i != base.source && base.status[static_cast<size_t>(i)] == EL_BELOW) return forced(false);

  if (i == base.source) {
    if (a.kind == Kind::R) return forced(true);
    if (a.kind == Kind::P2) return forced(a.idx[1] == base.source_witness);
    int j = a.idx[1], tl = a.idx[2], tm = a.idx[3];
    if (j != base.source_witness) return forced(false);
    if (tl != rvip_next_fresh(base)) return forced(false);
    auto pv = base.conceded.value(atom(Kind::P2, tl, tm));
    if (pv && !*pv) return forced(false);
    GameState t = base;
    t.conceded.set(a, true);
    t.conceded.set(atom(Kind::R, 1, tl), true);
    t.conceded.set(atom(Kind::P2, tl, tm), true);
    // the retiring source keeps its own commitments
    if (!t.conceded.contains(atom(Kind::R, 1, t.source)))
      t.conceded.set(atom(Kind::R, 1, t.source), true);
    if (!t.conceded.contains(atom(Kind::P2, t.source, t.source_witness)))
      t.conceded.set(atom(Kind::P2, t.source, t.source_witness), true);
    for (int x = t.source + 1; x < tl; ++x)
      if (t.status[static_cast<size_t>(x)] != EL_BELOW) rvip_pass_below(t, x);
    rvip_pass_below(t, t.source);
    t.source = tl;
    t.source_witness = tm;
    t.status[static_cast<size_t>(tl)] = EL_BELOW;
    t.true_choices++;
    t.free_choices++;
    GameState f = base;
    f.conceded.set(a, false);
    f.free_choices++;
    res.free_choice = true;
    res.next_true = t;
    res.next_false = f;
    return res;
  }

  int st = base.status[static_cast<size_t>(i)];
  auto grant = [&](GameState t, GameState f) {
    t.true_choices++;
    t.free_choices++;
    f.free_choices++;
    res.free_choice = true;
    res.next_true = std::move(t);
    res.next_false = std::move(f);
    return res;
  };
  if (a.kind == Kind::R) {
    if (st == EL_PTRUE) return forced(false);
    GameState t = base;
    t.conceded.set(a, true);
    t.status[static_cast<size_t>(i)] = EL_RTRUE;
    GameState f = base;
    f.conceded.set(a, false);
    if (f.status[static_cast<size_t>(i)] == EL_FRESH) f.status[static_cast<size_t>(i)] = EL_BUSY;
    return grant(std::move(t), std::move(f));
  }
  if (a.kind == Kind::P2) {
    if (st == EL_RTRUE) return forced(false);
    GameState t = base;
    t.conceded.set(a, true);
    t.status[static_cast<size_t>(i)] = EL_PTRUE;
    GameState f = base;
    f.conceded.set(a, false);  // a negative P does not retire the element
    return grant(std::move(t), std::move(f));
  }
  GameState t = base;
  t.conceded.set(a, true);
  if (!t.conceded.contains(atom(Kind::P2, i, a.idx[1]))) t.conceded.set(atom(Kind::P2, i, a.idx[1]), false);
  if (!t.conceded.contains(atom(Kind::R, 1, i))) t.conceded.set(atom(Kind::R, 1, i), false);
  if (t.status[static_cast<size_t>(i)] == EL_FRESH) t.status[static_cast<size_t>(i)] = EL_BUSY;
  GameState f = base;
  f.conceded.set(a, false);
  return grant(std::move(t), std::move(f));
}

}  // namespace

AnswerResult adversary_answer(const GameState& s, const Disjunction& query) {
  switch (s.variant) {
    case Variant::RIP: return rip_answer(s, query);
    case Variant::RVIP: return rvip_answer(s, query);
    case Variant::RLNP:
      throw std::invalid_argument("the least-number game is driven through rlnp_width_game");
  }
  throw std::logic_error("unknown variant");
}

// ---------------------------------------------------------------------------
// exact minimax on the quotient state
// ---------------------------------------------------------------------------

namespace {

struct Val {
  long long total = 0;
  long long leaves = 0;
};

Val better(Val a, Val b) {
  if (a.total != b.total) return a.total < b.total ? a : b;
  return a.leaves <= b.leaves ? a : b;
}

Val branch(Val a, Val b) { return {1 + a.total + b.total, a.leaves + b.leaves}; }
Val chain(Val a) { return {1 + a.total, a.leaves}; }

// Free elements above the source are interchangeable, so the value depends
// only on their count. Forced answers never help the minimizer, and
// falsifying an axiom outright costs at least its width, which exceeds the
// boundary trees on the supported grid, so only choice-granting queries
// are enumerated.
struct RipMinimax {
  int d;
  std::map<int, Val> memo;
  size_t states = 0;
  size_t budget;

  RipMinimax(int d_, size_t budget_) : d(d_), budget(budget_) {}

  Val value(int m) {
    if (m <= 0) return {1, 1};
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    if (++states > budget) throw std::runtime_error("minimax state budget exceeded");
    Val best{LLONG_MAX / 4, LLONG_MAX / 4};
    // plain free-element queries touching e elements: the true answer
    // retires one of them, the false answer retires all
    for (int e = 1; e <= std::min(d, m); ++e)
      best = better(best, branch(value(m - 1), value(m - e)));
    // witness queries: slot positions J, extra element positions E
    int reach = std::min(m, d + 1);
    std::vector<int> J, E;
    std::function<void()> eval_move = [&]() {
      int a = *std::min_element(J.begin(), J.end());
      if (a > reach) return;  // all slots far: denied without a choice
      Val vt = value(m - a);
      int b = -1;
      for (int p = 1; p <= m; ++p) {
        if (std::find(J.begin(), J.end(), p) != J.end()) continue;
        if (std::find(E.begin(), E.end(), p) != E.end()) continue;
        b = p;
        break;
      }
      if (b < 0) {
        best = better(best, chain(vt));  // forced move, single branch
        return;
      }
      int lost = static_cast<int>(E.size());
      for (int p = 1; p <= b; ++p)
        if (std::find(E.begin(), E.end(), p) == E.end()) ++lost;
      best = better(best, branch(vt, value(m - lost)));
    };
    std::function<void(int)> choose_e = [&](int start) {
      if (!J.empty()) eval_move();
      if (static_cast<int>(J.size() + E.size()) >= d) return;
      for (int x = start; x <= m; ++x) {
        if (std::find(J.begin(), J.end(), x) != J.end()) continue;
        E.push_back(x);
        choose_e(x + 1);
        E.pop_back();
      }
    };
    std::function<void(int)> choose_j = [&](int start) {
      if (!J.empty()) {
        E.clear();
        choose_e(1);
      }
      if (static_cast<int>(J.size()) >= d) return;
      for (int x = start; x <= m; ++x) {
        J.push_back(x);
        choose_j(x + 1);
        J.pop_back();
      }
    };
    choose_j(1);
    memo[m] = best;
    return best;
  }
};

// vectorized variant: statuses above the source plus the choice counters
struct RvipMinimax {
  int n, k;
  std::map<std::string, Val> memo;
  size_t states = 0;
  size_t budget;

  RvipMinimax(int n_, int k_, size_t budget_) : n(n_), k(k_), budget(budget_) {}

  static std::string key(int p, int q, const std::vector<int>& strip) {
    std::string s;
    s.push_back(static_cast<char>('0' + p));
    s.push_back(static_cast<char>('0' + q));
    for (int x : strip) s.push_back(static_cast<char>('a' + x));
    return s;
  }

  Val value(int p, int q, const std::vector<int>& strip) {
    if (p >= k || p + q >= n - 2) return {1, 1};
    auto id = key(p, q, strip);
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    if (++states > budget) throw std::runtime_error("minimax state budget exceeded");
    Val best{LLONG_MAX / 4, LLONG_MAX / 4};
    int first_fresh = -1;
    for (size_t i = 0; i < strip.size(); ++i)
      if (strip[i] == EL_FRESH) {
        first_fresh = static_cast<int>(i);
        break;
      }
    bool neutral_seen = false;
    for (size_t i = 0; i < strip.size(); ++i) {
      int st = strip[i];
      if (st == EL_FRESH) {
        {
          auto s1 = strip;
          s1[i] = EL_RTRUE;
          auto s2 = strip;
          s2[i] = EL_BUSY;
          best = better(best, branch(value(p + 1, q, s1), value(p, q + 1, s2)));
        }
        {
          auto s1 = strip;
          s1[i] = EL_PTRUE;
          best = better(best, branch(value(p + 1, q, s1), value(p, q + 1, strip)));
        }
        {
          auto s1 = strip;
          s1[i] = EL_BUSY;
          best = better(best, branch(value(p + 1, q, s1), value(p, q + 1, strip)));
        }
      } else if (st == EL_BUSY) {
        auto s1 = strip;
        s1[i] = EL_PTRUE;
        best = better(best, branch(value(p + 1, q, s1), value(p, q + 1, strip)));
        neutral_seen = true;
      } else {
        neutral_seen = true;
      }
    }
    if (neutral_seen)
      best = better(best, branch(value(p + 1, q, strip), value(p, q + 1, strip)));
    if (first_fresh >= 0) {
      std::vector<int> suffix(strip.begin() + first_fresh + 1, strip.end());
      best = better(best, branch(value(p + 1, q, suffix), value(p, q + 1, strip)));
    }
    if (best.total >= LLONG_MAX / 8) best = {1, 1};  // no choice-granting query remains
    memo[id] = best;
    return best;
  }
};

}  // namespace

MinimaxResult min_tree_size_vs_adversary(Variant variant, int n, int d, int k,
                                         size_t state_budget) {
  MinimaxResult out;
  if (variant == Variant::RIP) {
    if (n < d + 3) throw std::invalid_argument("game needs n >= d+3");
    RipMinimax mm(d, state_budget);
    Val v = mm.value(n - d - 2);
    out.total = v.total;
    out.leaves = v.leaves;
    out.internal = v.total - v.leaves;
    out.states = mm.states;
    return out;
  }
  if (variant == Variant::RVIP) {
    RvipMinimax mm(n, k, state_budget);
    std::vector<int> strip(static_cast<size_t>(n) - 2, EL_FRESH);
    Val v = mm.value(0, 0, strip);
    out.total = v.total;
    out.leaves = v.leaves;
    out.internal = v.total - v.leaves;
    out.states = mm.states;
    return out;
  }
  throw std::invalid_argument("minimax supports the induction variants");
}

// ---------------------------------------------------------------------------
// the width game
// ---------------------------------------------------------------------------

int WidthState::busy_count() const {
  int c = 0;
  for (size_t i = 1; i < part.size(); ++i)
    if (part[i] == 2) ++c;
  return c;
}

int WidthState::free_count() const {
  int c = 0;
  for (size_t i = 1; i < part.size(); ++i)
    if (part[i] == 0) ++c;
  return c;
}

WidthState width_initial(int m) {
  WidthState s;
  s.m = m;
  s.part.assign(static_cast<size_t>(m) + 1, 0);
  s.witness_for.assign(static_cast<size_t>(m) + 1, 0);
  return s;
}

namespace {

// witnesses sit below every busy element; within each class the order is
// the element index for witnesses and the busy insertion order otherwise
int width_rank(const WidthState& s, int e) {
  if (s.part[static_cast<size_t>(e)] == 1) return e;
  for (size_t i = 0; i < s.busy_order.size(); ++i)
    if (s.busy_order[i] == e) return s.m + 1 + static_cast<int>(i);
  return -1;
}

void width_busy(WidthState& s, int e) {
  if (s.contradiction) return;
  int cur = s.part[static_cast<size_t>(e)];
  if (cur == 2) return;
  s.part[static_cast<size_t>(e)] = 2;
  s.busy_order.insert(s.busy_order.begin(), e);  // bottom of the busy order
  if (cur == 1) return;  // a promoted witness keeps its witnessing role
  int w = 0;
  for (int i = 1; i <= s.m; ++i)
    if (s.part[static_cast<size_t>(i)] == 0) {
      w = i;
      break;
    }
  if (w == 0) {
    s.contradiction = true;
    return;
  }
  s.part[static_cast<size_t>(w)] = 1;
  s.witness_for[static_cast<size_t>(e)] = w;
  s.conceded.set(atom(Kind::S2, w, e), true);
}

bool width_makes_busy(const Atom& a, int e) {
  if (a.kind == Kind::L) return a.idx[0] == e || a.idx[1] == e;
  if (a.kind == Kind::S2) return a.idx[1] == e;
  return false;
}

}  // namespace

void width_step(WidthState& s, const WidthMove& move) {
  if (s.contradiction) return;
  if (move.forget) {
    auto it = std::find(s.remembered.begin(), s.remembered.end(), move.atom);
    if (it == s.remembered.end()) return;
    s.remembered.erase(it);
    s.conceded.map.erase(move.atom.key());
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t oi = 0; oi < s.busy_order.size(); ++oi) {
        int e = s.busy_order[oi];
        bool supported = false;
        for (const auto& a : s.remembered)
          if (width_makes_busy(a, e)) supported = true;
        if (supported) continue;
        s.busy_order.erase(s.busy_order.begin() + static_cast<long>(oi));
        s.part[static_cast<size_t>(e)] = 0;
        int w = s.witness_for[static_cast<size_t>(e)];
        s.witness_for[static_cast<size_t>(e)] = 0;
        if (w != 0 && s.part[static_cast<size_t>(w)] == 1) {
          s.part[static_cast<size_t>(w)] = 0;
          s.conceded.map.erase(atom(Kind::S2, w, e).key());
        }
        changed = true;
        break;
      }
    }
    return;
  }
  const Atom& a = move.atom;
  if (std::find(s.remembered.begin(), s.remembered.end(), a) != s.remembered.end()) return;
  std::vector<int> to_busy;
  if (a.kind == Kind::L) {
    to_busy = {a.idx[0], a.idx[1]};
    if (to_busy[0] == to_busy[1]) to_busy.pop_back();
  } else if (a.kind == Kind::S2) {
    to_busy = {a.idx[1]};
  }
  for (int e : to_busy) {
    width_busy(s, e);
    if (s.contradiction) return;
  }
  bool value = false;
  if (a.kind == Kind::L) {
    value = a.idx[0] != a.idx[1] && width_rank(s, a.idx[0]) < width_rank(s, a.idx[1]);
  } else if (a.kind == Kind::S2) {
    auto v = s.conceded.value(a);
    value = v ? *v : s.witness_for[static_cast<size_t>(a.idx[1])] == a.idx[0];
  }
  s.conceded.set(a, value);
  s.remembered.push_back(a);
}

WidthMove random_width_prover(const WidthState& s, Rng& rng) {
  WidthMove mv;
  if (!s.remembered.empty() && rng.below(4) == 0) {
    mv.forget = true;
    mv.atom = s.remembered[static_cast<size_t>(rng.below(s.remembered.size()))];
    return mv;
  }
  mv.forget = false;
  int m = s.m;
  if (rng.coin()) {
    mv.atom = atom(Kind::L, rng.range(1, m), rng.range(1, m));
  } else {
    mv.atom = atom(Kind::S2, rng.range(1, m), rng.range(1, m));
  }
  return mv;
}

WidthTranscript rlnp_width_game(int m, const WidthProver& prover, uint64_t seed, int max_steps) {
  WidthState s = width_initial(m);
  Rng rng(seed);
  WidthTranscript t;
  for (int step = 0; step < max_steps && !s.contradiction; ++step) {
    WidthMove mv = prover(s, rng);
    width_step(s, mv);
    ++t.steps;
    t.max_busy = std::max(t.max_busy, s.busy_count());
  }
  t.contradiction = s.contradiction;
  t.busy_at_contradiction = s.contradiction ? s.busy_count() : 0;
  return t;
}

// ---------------------------------------------------------------------------
// random play harness
// ---------------------------------------------------------------------------

namespace {

// incremental falsification watcher over the conceded assignment
struct CatchWatch {
  const CnfInstance& inst;
  std::map<uint64_t, std::vector<size_t>> lines_of_atom;

  explicit CatchWatch(const CnfInstance& i) : inst(i) {
    for (size_t id = 0; id < inst.lines.size(); ++id)
      for (const auto& t : inst.lines[id].terms)
        for (const auto& l : t.lits) lines_of_atom[l.atom.key()].push_back(id);
  }

  bool falsified_touching(const GameState& s, const std::vector<uint64_t>& fresh_keys) const {
    std::set<size_t> ids;
    for (uint64_t k : fresh_keys) {
      auto it = lines_of_atom.find(k);
      if (it == lines_of_atom.end()) continue;
      for (size_t id : it->second) ids.insert(id);
    }
    for (size_t id : ids)
      if (falsified(inst.lines[id], s.conceded)) return true;
    return false;
  }
};

std::vector<uint64_t> new_keys(const GameState& before, const GameState& after) {
  std::vector<uint64_t> out;
  for (const auto& [k, v] : after.conceded.map)
    if (!before.conceded.map.count(k)) out.push_back(k);
  return out;
}

}  // namespace

PlayStats random_plays(Variant v, const CnfInstance& inst, int plays, uint64_t seed) {
  PlayStats stats;
  CatchWatch watch(inst);
  std::vector<Atom> atoms;
  for (int var = 1; var <= inst.atlas.size(); ++var) atoms.push_back(inst.atlas.decode(var));
  int n = inst.spec.n, d = std::max(1, inst.spec.d), k = inst.spec.k;
  for (int play = 0; play < plays; ++play) {
    Rng rng(seed + static_cast<uint64_t>(play) * 0x9e3779b97f4a7c15ULL);
    GameState s = initial_state(v, n, d, k);
    bool was_caught = false;
    int guard = 0;
    while (!terminal(s) && guard++ < 100000) {
      const Atom& a = atoms[static_cast<size_t>(rng.below(atoms.size()))];
      if (s.conceded.contains(a)) continue;
      std::vector<Literal> lits{Literal{a, rng.coin()}};
      if (v == Variant::RIP && d >= 2 && rng.coin()) {
        const Atom& b = atoms[static_cast<size_t>(rng.below(atoms.size()))];
        if (b != a && !s.conceded.contains(b)) lits.push_back(Literal{b, rng.coin()});
      }
      Disjunction q = make_disjunction(std::move(lits));
      AnswerResult r = adversary_answer(s, q);
      if (r.no_op) continue;
      GameState next;
      if (r.free_choice)
        next = rng.coin() ? r.next_true : r.next_false;
      else
        next = r.forced_value ? r.next_true : r.next_false;
      auto fresh = new_keys(s, next);
      s = std::move(next);
      if (!terminal(s) && watch.falsified_touching(s, fresh)) {
        was_caught = true;
        break;
      }
    }
    ++stats.plays;
    if (was_caught) ++stats.caught_before_terminal;
    if (terminal(s)) ++stats.terminal_reached;
  }
  return stats;
}

std::string transcript_json(Variant v, const CnfInstance& inst, uint64_t seed, int max_steps) {
  std::ostringstream os;
  std::vector<Atom> atoms;
  for (int var = 1; var <= inst.atlas.size(); ++var) atoms.push_back(inst.atlas.decode(var));
  int n = inst.spec.n, d = std::max(1, inst.spec.d), k = inst.spec.k;
  GameState s = initial_state(v, n, d, k);
  Rng rng(seed);
  os << "[";
  bool first = true;
  for (int step = 0; step < max_steps && !terminal(s); ++step) {
    const Atom& a = atoms[static_cast<size_t>(rng.below(atoms.size()))];
    if (s.conceded.contains(a)) continue;
    Disjunction q = make_disjunction({Literal{a, true}});
    AnswerResult r = adversary_answer(s, q);
    if (r.no_op) continue;
    bool val;
    const char* kind;
    if (r.free_choice) {
      val = rng.coin();
      s = val ? r.next_true : r.next_false;
      kind = "free";
    } else {
      val = r.forced_value;
      s = val ? r.next_true : r.next_false;
      kind = "forced";
    }
    if (!first) os << ",";
    first = false;
    os << "{\"query\":\"" << a.str() << "\",\"kind\":\"" << kind
       << "\",\"answer\":" << (val ? "true" : "false") << "}";
  }
  os << "]";
  return os.str();
}

}  // namespace games
}  // namespace resd
