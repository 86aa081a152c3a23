#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resd/families.hpp"
#include "resd/oracle.hpp"

using namespace resd;

namespace {

CnfInstance gen(Family f, int n, int d = 0, int k = 0) {
  FamilySpec spec;
  spec.family = f;
  spec.n = n;
  spec.d = d;
  spec.k = k;
  if (f == Family::DRLNPGraph) spec.graph = Graph::complete(n);
  return generate(spec);
}

size_t expected_count(Family f, int n, int d, int k) {
  switch (f) {
    case Family::LNP: return static_cast<size_t>(n + n * n * n + n + n * n);
    case Family::DRLNP:
      return static_cast<size_t>(n + n * n * n + n + d * n * n + n * n + d);
    case Family::IP: return static_cast<size_t>(2 + (n - 1) + n * (n - 1) / 2);
    case Family::DRIP:
      return static_cast<size_t>(2 + 2 * d + (n - 1) + (d + 1) * n * (n - 1) / 2);
    case Family::DRVIP:
      return static_cast<size_t>(2 * d + 1 + n + (n - 1) * n + (d + 1) * (n - 1) * n * n * n);
    case Family::SigmaPST: return static_cast<size_t>(n + n * n);
    case Family::PHP:
      return static_cast<size_t>(n * (k + 1) * k / 2 + k * n * (n - 1) / 2 + (k + 1) +
                                 (k + 1) * n);
    default: return 0;
  }
}

}  // namespace

TEST_CASE("clause counts match the schema products") {
  CHECK(gen(Family::LNP, 2).lines.size() == 16);
  CHECK(gen(Family::DRLNP, 2, 1).lines.size() == 21);
  CHECK(gen(Family::IP, 3).lines.size() == 7);
  CHECK(gen(Family::DRVIP, 2, 1).lines.size() == 23);
  CHECK(gen(Family::SigmaPST, 3).lines.size() == 12);
  for (int n = 2; n <= 6; ++n) {
    CHECK(gen(Family::LNP, n).lines.size() == expected_count(Family::LNP, n, 0, 0));
    CHECK(gen(Family::IP, n).lines.size() == expected_count(Family::IP, n, 0, 0));
    CHECK(gen(Family::SigmaPST, n).lines.size() == expected_count(Family::SigmaPST, n, 0, 0));
    for (int d = 1; d <= 2; ++d) {
      CHECK(gen(Family::DRLNP, n, d).lines.size() == expected_count(Family::DRLNP, n, d, 0));
      CHECK(gen(Family::DRIP, n, d).lines.size() == expected_count(Family::DRIP, n, d, 0));
      CHECK(gen(Family::DRVIP, n, d).lines.size() == expected_count(Family::DRVIP, n, d, 0));
    }
    for (int k = 1; k <= 2 && k + 1 <= n; ++k)
      CHECK(gen(Family::PHP, n, 0, k).lines.size() == expected_count(Family::PHP, n, 0, k));
  }
}

TEST_CASE("generation is deterministic and byte stable") {
  auto a = to_dimacs(gen(Family::DRLNP, 4, 2));
  auto b = to_dimacs(gen(Family::DRLNP, 4, 2));
  CHECK(a == b);
  CHECK(a.find("p cnf") != std::string::npos);
}

TEST_CASE("every line is normalized and tagged") {
  for (Family f : {Family::LNP, Family::DRLNP, Family::IP, Family::DRIP, Family::DRVIP,
                   Family::SigmaPST, Family::PHP}) {
    int d = (f == Family::DRLNP || f == Family::DRIP || f == Family::DRVIP) ? 2 : 0;
    int k = f == Family::PHP ? 1 : 0;
    CnfInstance inst = gen(f, 4, d, k);
    CHECK(inst.lines.size() == inst.tags.size());
    for (const auto& l : inst.lines) CHECK(l == normalize(l));
    bool want_clause_only = f != Family::SigmaPST;
    CHECK(inst.clause_only() == want_clause_only);
    if (f == Family::SigmaPST)
      for (const auto& l : inst.lines) CHECK(l.width() <= 2);
  }
}

TEST_CASE("small instances are unsatisfiable, the choice system is not") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(oracle::unsat(gen(Family::LNP, n)));
    CHECK(oracle::unsat(gen(Family::IP, n)));
  }
  CHECK(oracle::unsat(gen(Family::DRLNP, 2, 1)));
  CHECK(oracle::unsat(gen(Family::DRIP, 3, 1)));
  CHECK(oracle::unsat(gen(Family::DRVIP, 2, 1)));
  CHECK(oracle::unsat(gen(Family::PHP, 3, 0, 1)));
  CHECK(oracle::unsat(gen(Family::PHP, 4, 0, 2)));
  CHECK(!oracle::unsat(gen(Family::SigmaPST, 3)));
}

TEST_CASE("parameterized axiom shape") {
  auto cl = parameterized_axiom({atom(Kind::P1, 1), atom(Kind::P1, 2)});
  CHECK(is_parameterized_axiom(cl, 1));
  CHECK(cl.terms.size() == 2);
  for (const auto& t : cl.terms) CHECK(!t.lits[0].pos);

  DnfLine mixed = clause_of({neg(atom(Kind::P1, 1)), lit(atom(Kind::P1, 2))});
  CHECK(!is_parameterized_axiom(mixed, 1));
  DnfLine dup = clause_of({neg(atom(Kind::P1, 1)), neg(atom(Kind::P1, 1))});
  CHECK(!is_parameterized_axiom(dup, 1));
  CHECK_THROWS(parameterized_axiom({atom(Kind::P1, 1), atom(Kind::P1, 1)}));
}

TEST_CASE("weight gadget adds a guard and pairs") {
  CnfInstance base = gen(Family::LNP, 3);
  CnfInstance out = sigma_prime(base, 2);
  CHECK(out.lines.size() == base.lines.size() + 3);
  // guard off restores the base
  Assignment off;
  off.set(atom(Kind::A), false);
  size_t matched = 0;
  for (size_t i = 0; i < base.lines.size(); ++i) {
    auto r = restrict_line(out.lines[i], off);
    REQUIRE(!r.satisfied);
    CHECK(r.line == base.lines[i]);
    ++matched;
  }
  CHECK(matched == base.lines.size());
  auto w = oracle::min_weight_sat(out);
  REQUIRE(w.has_value());
  CHECK(*w >= 4);  // the guard plus one of each pair
}

TEST_CASE("graph restriction trims witness clauses") {
  SUBCASE("complete graph only loses the diagonal witnesses") {
    CnfInstance inst = gen(Family::DRLNP, 3, 1);
    CnfInstance r = restrict_to_graph(inst, Graph::complete(3));
    for (size_t i = 0; i < r.lines.size(); ++i) {
      if (r.tags[i].rfind("total", 0) == 0) CHECK(r.lines[i].terms.size() == 2);
    }
  }
  SUBCASE("empty graph trivializes a totality clause") {
    CnfInstance inst = gen(Family::DRLNP, 3, 1);
    Graph g(3);
    CnfInstance r = restrict_to_graph(inst, g);
    bool empty_line = false;
    for (const auto& l : r.lines) empty_line |= l.empty();
    CHECK(empty_line);
  }
  SUBCASE("path graph totality ranges over neighbourhoods") {
    CnfInstance inst = gen(Family::DRLNP, 3, 1);
    CnfInstance r = restrict_to_graph(inst, Graph::path(3));
    for (size_t i = 0; i < r.lines.size(); ++i)
      if (r.tags[i] == "total 2") CHECK(r.lines[i].terms.size() == 2);
  }
}

TEST_CASE("instance json round trip") {
  CnfInstance inst = gen(Family::SigmaPST, 3);
  std::string text = to_jsonl(inst);
  CnfInstance back = instance_from_jsonl(text);
  CHECK(back.lines == inst.lines);
  CHECK(to_jsonl(back) == text);
}

TEST_CASE("dedupe flag removes tautological transitivity clauses") {
  FamilySpec spec;
  spec.family = Family::LNP;
  spec.n = 3;
  spec.dedupe = true;
  CnfInstance deduped = generate(spec);
  spec.dedupe = false;
  CnfInstance full = generate(spec);
  CHECK(deduped.lines.size() < full.lines.size());
}
