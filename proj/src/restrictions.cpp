#include "resd/restrictions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "resd/rng.hpp"

namespace resd {
namespace restrictions {

namespace {

size_t pair_ix(int n, int i, int j) {
  return static_cast<size_t>(i - 1) * static_cast<size_t>(n) + static_cast<size_t>(j - 1);
}

}  // namespace

std::optional<bool> RestrictionSample::value(const Atom& a) const {
  if (kind == SamplerKind::Weighted) {
    // rule-based values: no tables are materialized for the big runs
    auto is_chaotic = [&](int e) { return !live[static_cast<size_t>(e)]; };
    if (a.kind == Kind::R) {
      int i = a.idx[1];
      if (i == n || i == i0) return true;
      if (is_chaotic(i)) return false;
      return std::nullopt;
    }
    if (a.kind == Kind::L || a.kind == Kind::S2) {
      int i = a.idx[0], j = a.idx[1];
      if (i == i0 && j == n) return true;
      bool ci = is_chaotic(i), cj = is_chaotic(j);
      if (ci && cj) return pi[static_cast<size_t>(j)] == i;
      if (ci != cj) {
        int outside = ci ? j : i;
        if (outside != i0) return false;  // denied across the cut
        return std::nullopt;              // the pivot-to-chaotic pairs stay open
      }
      return std::nullopt;
    }
    return std::nullopt;
  }
  int8_t v = 0;
  switch (a.kind) {
    case Kind::R: {
      size_t ix = static_cast<size_t>(a.idx[0] - 1) * static_cast<size_t>(n) +
                  static_cast<size_t>(a.idx[1] - 1);
      v = rval[ix];
      break;
    }
    case Kind::L: v = lval[pair_ix(n, a.idx[0], a.idx[1])]; break;
    case Kind::S2: v = sval[pair_ix(n, a.idx[0], a.idx[1])]; break;
    default: return std::nullopt;
  }
  if (v == 0) return std::nullopt;
  return v > 0;
}

Assignment RestrictionSample::materialize(int d_planes) const {
  Assignment out;
  if (kind == SamplerKind::Weighted) {
    for (int i = 1; i <= n; ++i) {
      auto v = value(atom(Kind::R, 1, i));
      if (v) out.set(atom(Kind::R, 1, i), *v);
    }
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto v = value(atom(Kind::L, i, j));
        if (v) out.set(atom(Kind::L, i, j), *v);
        v = value(atom(Kind::S2, i, j));
        if (v) out.set(atom(Kind::S2, i, j), *v);
      }
    return out;
  }
  for (int p = 1; p <= d_planes; ++p)
    for (int i = 1; i <= n; ++i) {
      int8_t v = rval[static_cast<size_t>(p - 1) * static_cast<size_t>(n) + static_cast<size_t>(i - 1)];
      if (v != 0) out.set(atom(Kind::R, p, i), v > 0);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int8_t v = lval[pair_ix(n, i, j)];
      if (v != 0) out.set(atom(Kind::L, i, j), v > 0);
      v = sval[pair_ix(n, i, j)];
      if (v != 0) out.set(atom(Kind::S2, i, j), v > 0);
    }
  return out;
}

std::vector<int> RestrictionSample::live_elements() const {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (live[static_cast<size_t>(i)]) out.push_back(i);
  return out;
}

std::vector<int> RestrictionSample::chaotic_elements() const {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (!live[static_cast<size_t>(i)]) out.push_back(i);
  return out;
}

size_t RestrictionSample::live_count() const { return live_elements().size(); }

RestrictionSample sample_rlnp(int n, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("sampler needs n >= 3");
  Rng rng(seed);
  RestrictionSample s;
  s.kind = SamplerKind::LiveChaotic;
  s.n = n;
  s.d = 1;
  s.live.assign(static_cast<size_t>(n) + 1, 0);
  s.rval.assign(static_cast<size_t>(n), 0);
  s.lval.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  s.sval.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);

  // fair coins on every R_i except the pinned top element
  s.live[static_cast<size_t>(n)] = 1;
  s.rval[static_cast<size_t>(n - 1)] = 1;
  for (int i = 1; i <= n - 1; ++i) {
    bool in_live = rng.coin();
    s.live[static_cast<size_t>(i)] = in_live ? 1 : 0;
    s.rval[static_cast<size_t>(i - 1)] = in_live ? 1 : -1;
  }
  // order coins on every pair with a chaotic endpoint
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!s.live[static_cast<size_t>(i)] || !s.live[static_cast<size_t>(j)])
        s.lval[pair_ix(n, i, j)] = rng.coin() ? 1 : -1;
  // witness coins into every chaotic column; the diagonal is denied
  for (int j = 1; j <= n; ++j) {
    if (s.live[static_cast<size_t>(j)]) continue;
    bool all_false = true;
    for (int i = 1; i <= n; ++i) {
      if (i == j) {
        s.sval[pair_ix(n, i, j)] = -1;
        continue;
      }
      bool val = rng.coin();
      s.sval[pair_ix(n, i, j)] = val ? 1 : -1;
      if (val) all_false = false;
    }
    if (all_false) s.inconsistent = true;
  }
  // witnesses from the chaotic part into the live part are denied
  for (int i = 1; i <= n; ++i) {
    if (s.live[static_cast<size_t>(i)]) continue;
    for (int j = 1; j <= n; ++j)
      if (s.live[static_cast<size_t>(j)]) s.sval[pair_ix(n, i, j)] = -1;
  }
  return s;
}

RestrictionSample sample_drlnp(int d, int n, const Graph& g, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("sampler needs n >= 3");
  if (g.n() != n) throw std::invalid_argument("graph universe mismatch");
  Rng rng(seed);
  RestrictionSample s;
  s.kind = SamplerKind::LiveChaoticGraph;
  s.n = n;
  s.d = d;
  s.live.assign(static_cast<size_t>(n) + 1, 0);
  s.rval.assign(static_cast<size_t>(d) * static_cast<size_t>(n), 0);
  s.lval.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  s.sval.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);

  s.live[static_cast<size_t>(n)] = 1;
  for (int p = 1; p <= d; ++p)
    s.rval[static_cast<size_t>(p - 1) * static_cast<size_t>(n) + static_cast<size_t>(n - 1)] = 1;
  for (int i = 1; i <= n - 1; ++i) {
    bool all = true;
    for (int p = 1; p <= d; ++p) {
      bool val = rng.coin();
      s.rval[static_cast<size_t>(p - 1) * static_cast<size_t>(n) + static_cast<size_t>(i - 1)] =
          val ? 1 : -1;
      if (!val) all = false;
    }
    s.live[static_cast<size_t>(i)] = all ? 1 : 0;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!s.live[static_cast<size_t>(i)] || !s.live[static_cast<size_t>(j)])
        s.lval[pair_ix(n, i, j)] = rng.coin() ? 1 : -1;
  // witness coins along graph edges into chaotic columns
  for (int j = 1; j <= n; ++j) {
    if (s.live[static_cast<size_t>(j)]) continue;
    bool all_false = true;
    bool any_slot = false;
    for (int i : g.neighbours(j)) {
      any_slot = true;
      bool val = rng.coin();
      s.sval[pair_ix(n, i, j)] = val ? 1 : -1;
      if (val) all_false = false;
    }
    if (!any_slot || all_false) s.inconsistent = true;
  }
  for (int i = 1; i <= n; ++i) {
    if (s.live[static_cast<size_t>(i)]) continue;
    for (int j : g.neighbours(i))
      if (s.live[static_cast<size_t>(j)]) s.sval[pair_ix(n, i, j)] = -1;
  }
  return s;
}

RestrictionSample sample_param(int n, int k, uint64_t seed) {
  int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (n < 16 || root * root != n)
    throw std::invalid_argument("weighted sampler needs a perfect square n >= 16");
  Rng rng(seed);
  RestrictionSample s;
  s.kind = SamplerKind::Weighted;
  s.n = n;
  s.d = 1;
  s.k = k;
  s.live.assign(static_cast<size_t>(n) + 1, 1);
  s.pi.assign(static_cast<size_t>(n) + 1, 0);

  s.i0 = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
  // chaotic part: n - sqrt(n) elements of [n-1] \ {i0}
  std::vector<int> rest;
  for (int i = 1; i <= n - 1; ++i)
    if (i != s.i0) rest.push_back(i);
  rng.shuffle(rest);
  int csize = n - root;
  std::vector<int> chaotic(rest.begin(), rest.begin() + csize);
  std::sort(chaotic.begin(), chaotic.end());
  for (int c : chaotic) s.live[static_cast<size_t>(c)] = 0;
  // random bijection on the chaotic part drives order and witness values;
  // all remaining values come from the rules in value()
  std::vector<int> image = chaotic;
  rng.shuffle(image);
  for (size_t t = 0; t < chaotic.size(); ++t) s.pi[static_cast<size_t>(chaotic[t])] = image[t];
  return s;
}

int busy_count(const DnfLine& clause) {
  std::set<int> busy;
  for (const auto& t : clause.terms)
    for (const auto& l : t.lits) {
      switch (l.atom.kind) {
        case Kind::R: busy.insert(l.atom.idx[1]); break;
        case Kind::L:
          busy.insert(l.atom.idx[0]);
          busy.insert(l.atom.idx[1]);
          break;
        case Kind::S2: busy.insert(l.atom.idx[1]); break;
        default: break;
      }
    }
  return static_cast<int>(busy.size());
}

bool is_big_clause(const DnfLine& clause, int n) { return busy_count(clause) * 8 >= n; }

std::string McReport::str() const {
  std::ostringstream os;
  os << "trials=" << trials << " rate=" << rate << " wilson=[" << wilson_lo << "," << wilson_hi
     << "] bound=" << bound << " sigma=" << sigma << " " << (pass ? "pass" : "FAIL");
  return os.str();
}

McReport finish_report(uint64_t trials, uint64_t survived, double bound) {
  McReport r;
  r.trials = trials;
  r.survived = survived;
  r.rate = trials ? static_cast<double>(survived) / static_cast<double>(trials) : 0.0;
  double z = 1.96;
  double nn = static_cast<double>(trials);
  double ph = r.rate;
  double den = 1.0 + z * z / nn;
  double centre = ph + z * z / (2 * nn);
  double half = z * std::sqrt((ph * (1 - ph) + z * z / (4 * nn)) / nn);
  r.wilson_lo = std::max(0.0, (centre - half) / den);
  r.wilson_hi = std::min(1.0, (centre + half) / den);
  r.bound = bound;
  r.sigma = std::sqrt(std::max(bound * (1.0 - bound), 1e-12) / nn);
  r.pass = r.rate <= bound + 3.0 * r.sigma;
  return r;
}

namespace {

RestrictionSample draw(const SamplerSpec& spec, uint64_t seed) {
  switch (spec.kind) {
    case SamplerKind::LiveChaotic: return sample_rlnp(spec.n, seed);
    case SamplerKind::LiveChaoticGraph: return sample_drlnp(spec.d, spec.n, spec.graph, seed);
    case SamplerKind::Weighted: return sample_param(spec.n, spec.k, seed);
  }
  throw std::logic_error("unknown sampler");
}

bool clause_survives(const DnfLine& clause, const RestrictionSample& s) {
  // survives = not evaluated to true
  for (const auto& t : clause.terms) {
    bool all = true;
    for (const auto& l : t.lits) {
      auto v = s.value(l.atom);
      if (!v || *v != l.pos) {
        all = false;
        break;
      }
    }
    if (all) return false;
  }
  return true;
}

}  // namespace

namespace {

// per-trial seeding makes the count independent of the thread layout
uint64_t run_trials(const SamplerSpec& sampler, uint64_t trials, uint64_t seed, int jobs,
                    const std::function<bool(const RestrictionSample&)>& event) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    uint64_t hits = 0;
    for (uint64_t t = 0; t < trials; ++t)
      if (event(draw(sampler, seed + t))) ++hits;
    return hits;
  }
  std::vector<uint64_t> partial(static_cast<size_t>(jobs), 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      uint64_t lo = trials * static_cast<uint64_t>(w) / static_cast<uint64_t>(jobs);
      uint64_t hi = trials * (static_cast<uint64_t>(w) + 1) / static_cast<uint64_t>(jobs);
      uint64_t hits = 0;
      for (uint64_t t = lo; t < hi; ++t)
        if (event(draw(sampler, seed + t))) ++hits;
      partial[static_cast<size_t>(w)] = hits;
    });
  }
  for (auto& th : pool) th.join();
  uint64_t hits = 0;
  for (uint64_t h : partial) hits += h;
  return hits;
}

}  // namespace

McReport mc_kill_rate(const DnfLine& clause, const SamplerSpec& sampler, uint64_t trials,
                      uint64_t seed, std::optional<double> bound_override, int jobs) {
  if (trials < 10000) throw std::invalid_argument("kill-rate runs need at least 10^4 trials");
  double bound = bound_override
                     ? *bound_override
                     : std::pow(0.75, static_cast<double>(busy_count(clause)) / 2.0);
  uint64_t survived = run_trials(
      sampler, trials, seed, jobs,
      [&](const RestrictionSample& s) { return clause_survives(clause, s); });
  return finish_report(trials, survived, bound);
}

McReport mc_event_rate(const SamplerSpec& sampler, uint64_t trials, uint64_t seed, double bound,
                       const std::function<bool(const RestrictionSample&)>& event, int jobs) {
  uint64_t hits = run_trials(sampler, trials, seed, jobs, event);
  return finish_report(trials, hits, bound);
}

bool consistent_against_instance(const RestrictionSample& s, const CnfInstance& inst) {
  Assignment rho = s.materialize(std::max(1, inst.spec.d));
  for (const auto& line : inst.lines) {
    auto r = restrict_line(line, rho);
    if (!r.satisfied && r.line.empty()) return false;
  }
  return true;
}

bool residual_is_lnp(const RestrictionSample& s, const CnfInstance& inst) {
  Assignment rho = s.materialize(std::max(1, inst.spec.d));
  std::multiset<DnfLine> residual;
  for (const auto& line : inst.lines) {
    auto r = restrict_line(line, rho);
    if (r.satisfied) continue;
    residual.insert(r.line);
  }
  // map the reference family onto the live elements and compare line sets
  std::vector<int> live = s.live_elements();
  FamilySpec lnp;
  lnp.family = Family::LNP;
  lnp.n = static_cast<int>(live.size());
  if (lnp.n < 2) return false;
  CnfInstance ref = generate(lnp);
  std::multiset<DnfLine> expect;
  for (const auto& line : ref.lines) {
    DnfLine mapped;
    for (const auto& t : line.terms) {
      std::vector<Literal> lits;
      for (const auto& l : t.lits) {
        Atom a = l.atom;
        a.idx[0] = static_cast<uint16_t>(live[static_cast<size_t>(a.idx[0] - 1)]);
        a.idx[1] = static_cast<uint16_t>(live[static_cast<size_t>(a.idx[1] - 1)]);
        lits.push_back(Literal{a, l.pos});
      }
      auto tt = make_term(std::move(lits));
      if (tt) mapped.terms.push_back(std::move(*tt));
    }
    expect.insert(normalize(mapped));
  }
  (void)rank;
  // duplicates collapse on the residual side exactly when schemas coincide
  std::set<DnfLine> got(residual.begin(), residual.end());
  std::set<DnfLine> want(expect.begin(), expect.end());
  return got == want;
}

}  // namespace restrictions
}  // namespace resd
