#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resd/constructions.hpp"
#include "resd/oracle.hpp"
#include "resd/rng.hpp"

using namespace resd;

namespace {

CnfInstance gen(Family f, int n, int d = 0, int k = 0) {
  FamilySpec spec;
  spec.family = f;
  spec.n = n;
  spec.d = d;
  spec.k = k;
  return generate(spec);
}

CnfInstance adhoc(int atoms, std::vector<DnfLine> lines) {
  CnfInstance inst;
  inst.spec.family = Family::IP;
  inst.spec.n = std::max(2, atoms);
  inst.atlas = VariableAtlas({{Kind::P1, {std::max(2, atoms)}}});
  for (size_t i = 0; i < lines.size(); ++i) {
    inst.lines.push_back(normalize(lines[i]));
    inst.tags.push_back("adhoc");
  }
  return inst;
}

}  // namespace

TEST_CASE("enumeration certifies small families") {
  CHECK(oracle::brute_unsat(gen(Family::LNP, 3)));
  CHECK(!oracle::brute_unsat(gen(Family::SigmaPST, 2)));
  CnfInstance with_empty = adhoc(2, {DnfLine{}});
  CHECK(oracle::brute_unsat(with_empty));
  CHECK_THROWS_AS(oracle::brute_unsat(gen(Family::LNP, 4)), oracle::BudgetExceeded);
}

TEST_CASE("the two oracles agree") {
  for (int n = 2; n <= 3; ++n) {
    CHECK(oracle::brute_unsat(gen(Family::LNP, n)) == oracle::dpll_unsat(gen(Family::LNP, n)));
    CHECK(oracle::brute_unsat(gen(Family::IP, n)) == oracle::dpll_unsat(gen(Family::IP, n)));
    CHECK(oracle::brute_unsat(gen(Family::SigmaPST, n)) ==
          oracle::dpll_unsat(gen(Family::SigmaPST, n)));
  }
  CHECK(oracle::brute_unsat(gen(Family::DRLNP, 2, 1)) ==
        oracle::dpll_unsat(gen(Family::DRLNP, 2, 1)));
  CHECK(oracle::brute_unsat(gen(Family::DRIP, 3, 1)) == oracle::dpll_unsat(gen(Family::DRIP, 3, 1)));
}

TEST_CASE("minimal weights") {
  auto w = oracle::min_weight_sat(gen(Family::SigmaPST, 5));
  REQUIRE(w.has_value());
  CHECK(*w == 5);
  CHECK(!oracle::min_weight_sat(gen(Family::LNP, 3)).has_value());
  // bounded probe with certification
  CHECK(!oracle::min_weight_sat(gen(Family::LNP, 3), 3).has_value());
}

TEST_CASE("minimal decision trees on tiny instances") {
  Atom x = atom(Kind::P1, 1);
  Atom y = atom(Kind::P1, 2);
  SUBCASE("single variable") {
    CnfInstance inst = adhoc(2, {clause_of({lit(x)}), clause_of({neg(x)})});
    auto t = oracle::min_tree_refutation_size(inst, 1);
    CHECK(t.internal == 1);
  }
  SUBCASE("two variables") {
    CnfInstance inst = adhoc(2, {clause_of({lit(x), lit(y)}), clause_of({neg(x)}), clause_of({neg(y)})});
    auto t = oracle::min_tree_refutation_size(inst, 1);
    CHECK(t.internal == 2);
  }
  SUBCASE("wider queries never hurt") {
    CnfInstance small = gen(Family::DRIP, 2, 1);  // five atoms
    auto t1 = oracle::min_tree_refutation_size(small, 1);
    auto t2 = oracle::min_tree_refutation_size(small, 2);
    CHECK(t2.internal <= t1.internal);
    CnfInstance pair = adhoc(3, {clause_of({lit(x), lit(y)}), clause_of({neg(x)}), clause_of({neg(y)})});
    auto p1 = oracle::min_tree_refutation_size(pair, 1);
    auto p2 = oracle::min_tree_refutation_size(pair, 2);
    CHECK(p2.internal <= p1.internal);
  }
  SUBCASE("parameterized sink closes early") {
    CnfInstance inst = adhoc(3, {clause_of({lit(x)}), clause_of({lit(y)})});
    auto t = oracle::min_tree_refutation_size(inst, 1, 1);
    CHECK(t.internal == 2);  // ask both, the pair of trues refutes the weight axiom
  }
}

TEST_CASE("representation height and covers") {
  Atom x = atom(Kind::P1, 1);
  Atom y = atom(Kind::P1, 2);
  Atom z = atom(Kind::P1, 3);
  SUBCASE("single literal") {
    DnfLine f = clause_of({lit(x)});
    CHECK(oracle::representation_height(f) == 1);
    CHECK(oracle::covering_number(f) == 1);
  }
  SUBCASE("shared variable cover") {
    DnfLine f = normalize(DnfLine{{Term{{lit(x), lit(y)}}, Term{{lit(x), lit(z)}}}});
    CHECK(oracle::covering_number(f) == 1);
  }
  SUBCASE("mention rule for the element cover") {
    // S_{2,7} mentions element 7 only
    DnfLine f = clause_of({lit(atom(Kind::S2, 2, 7))});
    auto elems = oracle::mentioned_elements(f.terms[0]);
    REQUIRE(elems.size() == 1);
    CHECK(elems[0] == 7);
    CHECK(oracle::element_cover(f) == 1);
  }
  SUBCASE("restriction never raises the height") {
    Rng rng(5);
    std::vector<Atom> atoms;
    for (int i = 1; i <= 7; ++i) atoms.push_back(atom(Kind::P1, i));
    for (int it = 0; it < 40; ++it) {
      DnfLine f;
      int terms = rng.range(1, 4);
      for (int t = 0; t < terms; ++t) {
        std::vector<Literal> lits;
        int w = rng.range(1, 2);
        for (int i = 0; i < w; ++i)
          lits.push_back(Literal{atoms[static_cast<size_t>(rng.below(atoms.size()))], rng.coin()});
        f.terms.push_back(Term{lits});
      }
      f = normalize(f);
      if (f.terms.empty()) continue;
      int h = oracle::representation_height(f);
      Assignment rho;
      for (const auto& a : atoms)
        if (rng.below(3) == 0) rho.set(a, rng.coin());
      auto r = restrict_line(f, rho);
      int hr = r.satisfied ? 0 : oracle::representation_height(r.line);
      CHECK(hr <= h);
    }
  }
}

TEST_CASE("variable covers against element covers on the relativized atlas") {
  // random 2-DNFs over graph-supported variables: the variable cover never
  // exceeds d*m + m(m-1)/2 + m*maxdeg where m is the element cover
  int n = 8, d = 2;
  Graph g = Graph::erdos_renyi(n, 4.0, 3);
  Rng rng(31);
  std::vector<Atom> pool;
  for (int p = 1; p <= d; ++p)
    for (int i = 1; i <= n; ++i) pool.push_back(atom(Kind::R, p, i));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (g.has_edge(i, j)) {
        pool.push_back(atom(Kind::L, i, j));
        pool.push_back(atom(Kind::S2, i, j));
      }
  REQUIRE(pool.size() > 4);
  for (int it = 0; it < 100; ++it) {
    DnfLine f;
    int terms = rng.range(1, 5);
    for (int t = 0; t < terms; ++t) {
      std::vector<Literal> lits;
      for (int w = 0; w < 2; ++w)
        lits.push_back(Literal{pool[static_cast<size_t>(rng.below(pool.size()))], rng.coin()});
      f.terms.push_back(Term{lits});
    }
    f = normalize(f);
    if (f.terms.empty()) continue;
    int c = oracle::covering_number(f);
    int m = oracle::element_cover(f);
    CHECK(c <= d * m + m * (m - 1) / 2 + m * g.max_degree());
  }
}

TEST_CASE("tree size oracle lower bounds the emitted constructions") {
  auto ip3 = constructions::refute_ip(3);
  auto t = oracle::min_tree_refutation_size(ip3.instance, 1);
  CHECK(static_cast<size_t>(t.internal) <= ip3.report.size);
}
