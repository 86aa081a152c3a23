#include "resd/constructions.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "resd/games.hpp"

namespace resd {
namespace constructions {

std::string SizeReport::csv_header() { return "family,d,n,k,size,claimed"; }

std::string SizeReport::csv_row() const {
  std::ostringstream os;
  os << family << "," << d << "," << n << "," << k << "," << size << "," << claimed_form;
  return os.str();
}

namespace {

std::vector<Literal> R_term(int d, int i) {
  std::vector<Literal> lits;
  for (int p = 1; p <= d; ++p) lits.push_back(lit(atom(Kind::R, p, i)));
  return lits;
}

std::vector<Literal> not_R_lits(int d, int i) {
  std::vector<Literal> lits;
  for (int p = 1; p <= d; ++p) lits.push_back(neg(atom(Kind::R, p, i)));
  return lits;
}

// emitters track instance lines by tag for axiom lookup
struct AxiomIndex {
  std::map<std::string, int> by_tag;
  const CnfInstance& inst;

  explicit AxiomIndex(const CnfInstance& i) : inst(i) {
    for (size_t id = 0; id < i.tags.size(); ++id) by_tag[i.tags[id]] = static_cast<int>(id);
  }
  const DnfLine& line(const std::string& tag) const {
    auto it = by_tag.find(tag);
    if (it == by_tag.end()) throw std::logic_error("missing axiom tag " + tag);
    return inst.lines[static_cast<size_t>(it->second)];
  }
};

std::string tg(const char* schema, std::initializer_list<int> ix) {
  std::ostringstream os;
  os << schema;
  bool first = true;
  for (int v : ix) {
    os << (first ? " " : ",") << v;
    first = false;
  }
  return os.str();
}

struct Emitter {
  Refutation proof;

  int axiom(const DnfLine& l) { return proof.add_axiom(l); }
  int param_axiom(DnfLine l) { return proof.add(std::move(l), RuleApp{Rule::ParamAxiom}); }
  int cut(int pos, int negside, std::vector<Literal> i) {
    DnfLine c = conclude_cut(proof.lines[static_cast<size_t>(pos)].line,
                             proof.lines[static_cast<size_t>(negside)].line, i);
    RuleApp app;
    app.rule = Rule::Cut;
    app.prem = {pos, negside};
    app.pos_premise = 0;
    app.w1 = std::move(i);
    return proof.add(std::move(c), std::move(app));
  }
  int and_intro(int a, int b, std::vector<Literal> i1, std::vector<Literal> i2) {
    DnfLine c = conclude_and_intro(proof.lines[static_cast<size_t>(a)].line,
                                   proof.lines[static_cast<size_t>(b)].line, i1, i2);
    RuleApp app;
    app.rule = Rule::AndIntro;
    app.prem = {a, b};
    app.w1 = std::move(i1);
    app.w2 = std::move(i2);
    return proof.add(std::move(c), std::move(app));
  }
  int weaken_add(int p, std::vector<Literal> term) {
    DnfLine c = conclude_weaken_add(proof.lines[static_cast<size_t>(p)].line, term);
    RuleApp app;
    app.rule = Rule::WeakenAdd;
    app.prem = {p, -1};
    app.w1 = std::move(term);
    return proof.add(std::move(c), std::move(app));
  }
  int weaken_drop(int p, std::vector<Literal> kept, std::vector<Literal> dropped) {
    DnfLine c = conclude_weaken_drop(proof.lines[static_cast<size_t>(p)].line, kept, dropped);
    RuleApp app;
    app.rule = Rule::WeakenDrop;
    app.prem = {p, -1};
    app.w1 = std::move(kept);
    app.w2 = std::move(dropped);
    return proof.add(std::move(c), std::move(app));
  }
  const DnfLine& line(int id) const { return proof.lines[static_cast<size_t>(id)].line; }
};

}  // namespace

Emitted refute_drlnp(int d, int n) {
  if (d < 1 || n < 2) throw std::invalid_argument("refute_drlnp needs d >= 1, n >= 2");
  FamilySpec spec;
  spec.family = Family::DRLNP;
  spec.n = n;
  spec.d = d;
  CnfInstance inst = generate(spec);
  AxiomIndex ax(inst);
  Emitter em;
  em.proof.d = d + 1;
  em.proof.tree_like = false;
  em.proof.instance_name = spec.str();

  // stage clauses: stage[l] holds ids of
  //   min[j]  = ~R_j v OR_{i in [l], i != j} (L_{i,j} & R_i)      j in [l]
  //   all     = OR_{i in [l]} R_i
  std::map<int, int> min_clause;  // j -> line id (current stage)
  int all_clause = -1;

  // top stage from the axioms
  for (int j = 1; j <= n; ++j) {
    // derive ~S_{i,j} v ~R_j v (L_{i,j} & R_i) for i != j, then resolve
    // them away against the Skolem totality clause
    int run = ax.by_tag.count(tg("total", {j})) ? em.axiom(ax.line(tg("total", {j}))) : -1;
    for (int i = 1; i <= n; ++i) {
      if (i == j) continue;
      int cur = em.axiom(ax.line(tg("wit-ord", {i, j})));
      std::vector<Literal> grown{lit(atom(Kind::L, i, j))};
      for (int p = 1; p <= d; ++p) {
        int sr = em.axiom(ax.line(tg("wit-rel", {i, j, p})));
        std::vector<Literal> i2{lit(atom(Kind::R, p, i))};
        cur = em.and_intro(cur, sr, grown, i2);
        grown.push_back(lit(atom(Kind::R, p, i)));
      }
      run = em.cut(run, cur, {lit(atom(Kind::S2, i, j))});
    }
    int sjj = em.axiom(ax.line(tg("wit-ord", {j, j})));
    run = em.cut(run, sjj, {lit(atom(Kind::S2, j, j))});
    int irr = em.axiom(ax.line(tg("irrefl", {j})));
    run = em.cut(run, irr, {lit(atom(Kind::L, j, j))});
    min_clause[j] = run;
  }
  {
    int run = -1;
    for (int p = 1; p <= d; ++p) {
      int unit = em.axiom(ax.line(tg("top-rel", {p})));
      if (run < 0) {
        run = unit;
      } else {
        std::vector<Literal> i1 = em.line(run).terms[0].lits;
        run = em.and_intro(run, unit, i1, {lit(atom(Kind::R, p, n))});
      }
    }
    for (int i = 1; i <= n - 1; ++i) run = em.weaken_add(run, R_term(d, i));
    all_clause = run;
  }

  // descend stages l = n .. 2
  for (int l = n; l >= 2; --l) {
    std::map<int, int> next_min;
    int start = min_clause[l];  // ~R_l v OR_{i in [l-1]} (L_{i,l} & R_i)
    for (int j = 1; j <= l - 1; ++j) {
      int cur = start;
      for (int i = 1; i <= l - 1; ++i) {
        // substage i: replace the disjunct (L_{i,l} & R_i) by (L_{i,j} & R_i)
        std::vector<Literal> conj{lit(atom(Kind::L, i, l))};
        auto ri = R_term(d, i);
        conj.insert(conj.end(), ri.begin(), ri.end());
        int trans = em.axiom(ax.line(tg("trans", {i, l, j})));
        std::vector<Literal> cutlits{neg(atom(Kind::L, i, l))};
        auto nri = not_R_lits(d, i);
        cutlits.insert(cutlits.end(), nri.begin(), nri.end());
        int a = em.cut(trans, cur, cutlits);
        int bline = em.weaken_drop(cur, R_term(d, i), {lit(atom(Kind::L, i, l))});
        cur = em.and_intro(a, bline, {lit(atom(Kind::L, i, j))}, R_term(d, i));
      }
      int irr = em.axiom(ax.line(tg("irrefl", {j})));
      std::vector<Literal> jlits{lit(atom(Kind::L, j, j))};
      auto rj = R_term(d, j);
      jlits.insert(jlits.end(), rj.begin(), rj.end());
      // kill (L_{j,j} & R_j): the irreflexivity axiom carries the negations
      {
        std::vector<Literal> cutlits{neg(atom(Kind::L, j, j))};
        auto nrj = not_R_lits(d, j);
        cutlits.insert(cutlits.end(), nrj.begin(), nrj.end());
        cur = em.cut(irr, cur, cutlits);
      }
      // final cut with the stage-l min clause for j removes ~R_l, ~L_{l,j}
      {
        std::vector<Literal> cutlits{neg(atom(Kind::L, l, j))};
        auto nrl = not_R_lits(d, l);
        cutlits.insert(cutlits.end(), nrl.begin(), nrl.end());
        cur = em.cut(cur, min_clause[j], cutlits);
      }
      next_min[j] = cur;
    }
    // OR_{i in [l-1]} R_i from the stage-l clauses
    {
      int cur = start;
      for (int i = 1; i <= l - 1; ++i)
        cur = em.weaken_drop(cur, R_term(d, i), {lit(atom(Kind::L, i, l))});
      all_clause = em.cut(cur, all_clause, not_R_lits(d, l));
    }
    min_clause = std::move(next_min);
  }
  // stage 1: ~R_1 against R_1
  em.cut(min_clause[1], all_clause, not_R_lits(d, 1));

  Emitted out{std::move(inst), std::move(em.proof), {}};
  out.report = {"drlnp", d, n, 0, out.proof.rule_count(), "d*n^3"};
  return out;
}

Emitted refute_ip(int n) {
  if (n < 2) throw std::invalid_argument("refute_ip needs n >= 2");
  FamilySpec spec;
  spec.family = Family::IP;
  spec.n = n;
  CnfInstance inst = generate(spec);
  AxiomIndex ax(inst);
  Emitter em;
  em.proof.d = 1;
  em.proof.tree_like = true;
  em.proof.instance_name = spec.str();

  // descending stage clauses D_i = ~P_i v OR_{j>i} P_j
  std::vector<int> D(static_cast<size_t>(n), -1);
  for (int i = 1; i <= n - 1; ++i) {
    int run = em.axiom(ax.line(tg("total", {i})));
    for (int j = i + 1; j <= n; ++j) {
      int imp = em.axiom(ax.line(tg("step", {i, j})));
      run = em.cut(run, imp, {lit(atom(Kind::S2, i, j))});
    }
    D[static_cast<size_t>(i)] = run;
  }
  int base = em.axiom(ax.line(tg("base", {})));
  int F = em.cut(D[1], base, {neg(atom(Kind::P1, 1))});
  for (int i = 2; i <= n - 1; ++i) {
    F = em.cut(F, D[static_cast<size_t>(i)], {lit(atom(Kind::P1, i))});
  }
  int top = em.axiom(ax.line(tg("top", {})));
  em.cut(F, top, {lit(atom(Kind::P1, n))});

  Emitted out{std::move(inst), std::move(em.proof), {}};
  out.report = {"ip", 1, n, 0, out.proof.rule_count(), "n^2"};
  return out;
}

Emitted refute_drip(int d, int n) {
  if (d < 1 || n < 2) throw std::invalid_argument("refute_drip needs d >= 1, n >= 2");
  FamilySpec spec;
  spec.family = Family::DRIP;
  spec.n = n;
  spec.d = d;
  CnfInstance inst = generate(spec);
  AxiomIndex ax(inst);
  Emitter em;
  em.proof.d = d + 1;
  em.proof.tree_like = true;
  em.proof.instance_name = spec.str();

  // B_i = ~R_i v ~P_i v OR_{j >= i+1} (R_j & P_j)
  auto make_B = [&](int i) {
    int run = em.axiom(ax.line(tg("total", {i})));
    for (int j = i + 1; j <= n; ++j) {
      int cur = em.axiom(ax.line(tg("step", {i, j})));
      std::vector<Literal> grown{lit(atom(Kind::P1, j))};
      for (int p = 1; p <= d; ++p) {
        int sr = em.axiom(ax.line(tg("step-rel", {i, j, p})));
        cur = em.and_intro(cur, sr, grown, {lit(atom(Kind::R, p, j))});
        grown.push_back(lit(atom(Kind::R, p, j)));
      }
      run = em.cut(run, cur, {lit(atom(Kind::S2, i, j))});
    }
    return run;
  };

  // stage 1 from the pure-literal axioms
  int st = make_B(1);
  {
    int pb = em.axiom(ax.line(tg("base", {})));
    st = em.cut(st, pb, {neg(atom(Kind::P1, 1))});
    for (int p = 1; p <= d; ++p) {
      int rb = em.axiom(ax.line(tg("base-rel", {p})));
      st = em.cut(st, rb, {neg(atom(Kind::R, p, 1))});
    }
  }
  for (int i = 2; i <= n - 1; ++i) {
    int Bi = make_B(i);
    std::vector<Literal> cutlits{neg(atom(Kind::P1, i))};
    auto nri = not_R_lits(d, i);
    cutlits.insert(cutlits.end(), nri.begin(), nri.end());
    st = em.cut(Bi, st, cutlits);
  }
  // st is now the pure term R_n & P_n
  int pn = em.weaken_drop(st, {lit(atom(Kind::P1, n))}, R_term(d, n));
  int top = em.axiom(ax.line(tg("top", {})));
  em.cut(pn, top, {lit(atom(Kind::P1, n))});

  Emitted out{std::move(inst), std::move(em.proof), {}};
  out.report = {"drip", d, n, 0, out.proof.rule_count(), "d*n^2"};
  return out;
}

Emitted refute_rvip(int d, int n) {
  if (d < 1 || n < 2) throw std::invalid_argument("refute_rvip needs d >= 1, n >= 2");
  FamilySpec spec;
  spec.family = Family::DRVIP;
  spec.n = n;
  spec.d = d;
  CnfInstance inst = generate(spec);
  games::BranchingProgram bp = games::vectorized_induction_program(inst);
  Refutation proof = games::bp_to_refutation(bp, inst);
  Emitted out{std::move(inst), std::move(proof), {}};
  out.report = {"drvip", d, n, 0, out.proof.rule_count(), d == 1 ? "n^4" : "n^(d+4)"};
  return out;
}

Emitted refute_sigma_pst(int n, int k) {
  if (!(n > k && k >= 1)) throw std::invalid_argument("refute_sigma_pst needs n > k >= 1");
  FamilySpec spec;
  spec.family = Family::SigmaPST;
  spec.n = n;
  CnfInstance inst = generate(spec);
  AxiomIndex ax(inst);
  Emitter em;
  em.proof.d = 2;
  em.proof.tree_like = true;
  em.proof.param_k = k;
  em.proof.instance_name = spec.str() + " k=" + std::to_string(k);

  std::vector<Atom> pvars;
  for (int i = 1; i <= k + 1; ++i) pvars.push_back(atom(Kind::P1, i));
  int pa = em.param_axiom(parameterized_axiom(pvars));
  for (int i = 1; i <= k + 1; ++i) {
    int cur = em.axiom(ax.line(tg("choice", {i})));
    for (int j = 1; j <= n; ++j) {
      int ts = em.axiom(ax.line(tg("t-imp-s", {i, j})));
      cur = em.cut(ts, cur, {neg(atom(Kind::T, i, j)), lit(atom(Kind::S2, i, j))});
    }
    // cur is the unit P_i
    pa = em.cut(pa, cur, {neg(atom(Kind::P1, i))});
  }

  Emitted out{std::move(inst), std::move(em.proof), {}};
  out.report = {"sigma-pst", 2, n, k, out.proof.rule_count(), "k*n"};
  return out;
}

Fit fit_size(const std::vector<std::pair<int, size_t>>& sweep) {
  if (sweep.size() < 4) throw std::invalid_argument("fit needs at least 4 points");
  for (size_t i = 1; i < sweep.size(); ++i)
    if (sweep[i].first <= sweep[i - 1].first)
      throw std::invalid_argument("fit needs strictly increasing n");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = static_cast<double>(sweep.size());
  for (auto& [n, size] : sweep) {
    double x = std::log(static_cast<double>(n));
    double y = std::log(static_cast<double>(size));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Fit f;
  f.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.exponent * sx) / m;
  for (auto& [n, size] : sweep) {
    double x = std::log(static_cast<double>(n));
    double y = std::log(static_cast<double>(size));
    f.max_residual = std::max(f.max_residual, std::abs(y - (f.intercept + f.exponent * x)));
  }
  return f;
}

}  // namespace constructions
}  // namespace resd
