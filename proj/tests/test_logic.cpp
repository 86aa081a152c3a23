#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "resd/atlas.hpp"
#include "resd/families.hpp"
#include "resd/logic.hpp"
#include "resd/rng.hpp"

using namespace resd;

namespace {

Atom x() { return atom(Kind::P1, 1); }
Atom y() { return atom(Kind::P1, 2); }

std::vector<Atom> small_atoms(int count) {
  std::vector<Atom> out;
  for (int i = 1; i <= count; ++i) out.push_back(atom(Kind::P1, i));
  return out;
}

DnfLine random_line(Rng& rng, const std::vector<Atom>& atoms, int max_terms, int max_width) {
  DnfLine l;
  int terms = rng.range(0, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<Literal> lits;
    int w = rng.range(1, max_width);
    for (int i = 0; i < w; ++i)
      lits.push_back(Literal{atoms[static_cast<size_t>(rng.below(atoms.size()))], rng.coin()});
    l.terms.push_back(Term{std::move(lits)});
  }
  return l;
}

}  // namespace

TEST_CASE("contradictory term normalizes away") {
  DnfLine l{{Term{{lit(x()), neg(x())}}}};
  CHECK(normalize(l).empty());
}

TEST_CASE("duplicate terms merge") {
  DnfLine l{{Term{{lit(x())}}, Term{{lit(x())}}}};
  CHECK(normalize(l).terms.size() == 1);
}

TEST_CASE("commuted conjunctions canonicalize") {
  DnfLine a{{Term{{lit(y()), lit(x())}}}};
  DnfLine b{{Term{{lit(x()), lit(y())}}}};
  CHECK(normalize(a) == normalize(b));
  CHECK(normalize(a).terms.size() == 1);
}

TEST_CASE("normalize is idempotent and order insensitive") {
  Rng rng(7);
  auto atoms = small_atoms(6);
  for (int it = 0; it < 300; ++it) {
    DnfLine l = random_line(rng, atoms, 6, 3);
    DnfLine n1 = normalize(l);
    CHECK(normalize(n1) == n1);
    DnfLine shuffled = l;
    rng.shuffle(shuffled.terms);
    for (auto& t : shuffled.terms) rng.shuffle(t.lits);
    CHECK(normalize(shuffled) == n1);
  }
}

TEST_CASE("normalize preserves semantics on every total assignment") {
  Rng rng(11);
  auto atoms = small_atoms(8);
  for (int it = 0; it < 120; ++it) {
    DnfLine l = random_line(rng, atoms, 5, 3);
    DnfLine n = normalize(l);
    for (uint32_t mask = 0; mask < (1u << atoms.size()); ++mask) {
      Assignment sigma;
      for (size_t i = 0; i < atoms.size(); ++i) sigma.set(atoms[i], (mask >> i) & 1);
      CHECK(eval_line(l, sigma) == eval_line(n, sigma));
    }
  }
}

TEST_CASE("restrict drops satisfied literals and falsified terms") {
  Atom r5 = atom(Kind::R, 1, 5);
  Atom p5 = atom(Kind::P1, 5);
  Atom l12 = atom(Kind::L, 1, 2);

  SUBCASE("fully satisfied term yields the verdict") {
    Assignment rho;
    rho.set(r5, true);
    auto res = restrict_line(DnfLine{{Term{{lit(r5)}}}}, rho);
    CHECK(res.satisfied);
  }
  SUBCASE("falsified term drops") {
    Assignment rho;
    rho.set(r5, false);
    DnfLine l{{Term{{lit(r5), lit(p5)}}, Term{{lit(l12)}}}};
    auto res = restrict_line(normalize(l), rho);
    REQUIRE(!res.satisfied);
    CHECK(res.line == normalize(DnfLine{{Term{{lit(l12)}}}}));
  }
  SUBCASE("the empty line is fixed") {
    Assignment rho;
    rho.set(r5, true);
    auto res = restrict_line(DnfLine{}, rho);
    CHECK(!res.satisfied);
    CHECK(res.line.empty());
  }
}

TEST_CASE("restriction composes over disjoint domains") {
  Rng rng(23);
  auto atoms = small_atoms(8);
  for (int it = 0; it < 200; ++it) {
    DnfLine l = normalize(random_line(rng, atoms, 5, 3));
    Assignment r1, r2, both;
    for (size_t i = 0; i < atoms.size(); ++i) {
      int c = rng.range(0, 3);
      if (c == 0) {
        bool v = rng.coin();
        r1.set(atoms[i], v);
        both.set(atoms[i], v);
      } else if (c == 1) {
        bool v = rng.coin();
        r2.set(atoms[i], v);
        both.set(atoms[i], v);
      }
    }
    auto a = restrict_line(l, r1);
    Restricted ab = a.satisfied ? a : restrict_line(a.line, r2);
    auto direct = restrict_line(l, both);
    CHECK(ab.satisfied == direct.satisfied);
    if (!ab.satisfied) CHECK(ab.line == direct.line);
  }
}

TEST_CASE("atlas encodes the order family row major") {
  FamilySpec spec;
  spec.family = Family::LNP;
  spec.n = 2;
  CnfInstance inst = generate(spec);
  CHECK(inst.atlas.encode(atom(Kind::L, 1, 1)) == 1);
  CHECK(inst.atlas.encode(atom(Kind::L, 2, 1)) == 3);
}

TEST_CASE("atlas encode and decode are inverse") {
  for (Family f : {Family::LNP, Family::DRLNP, Family::IP, Family::DRIP, Family::DRVIP,
                   Family::SigmaPST, Family::PHP}) {
    FamilySpec spec;
    spec.family = f;
    spec.n = 4;
    spec.d = (f == Family::DRLNP || f == Family::DRIP || f == Family::DRVIP) ? 2 : 0;
    spec.k = f == Family::PHP ? 2 : 0;
    CnfInstance inst = generate(spec);
    for (int v = 1; v <= inst.atlas.size(); ++v) {
      Atom a = inst.atlas.decode(v);
      CHECK(inst.atlas.encode(a) == v);
    }
    CHECK_THROWS_AS(inst.atlas.decode(inst.atlas.size() + 1), std::out_of_range);
  }
}

TEST_CASE("atlas rejects out-of-range atoms") {
  FamilySpec spec;
  spec.family = Family::LNP;
  spec.n = 3;
  CnfInstance inst = generate(spec);
  CHECK_THROWS_AS(inst.atlas.encode(atom(Kind::L, 4, 1)), std::out_of_range);
  CHECK_THROWS_AS(inst.atlas.encode(atom(Kind::R, 1, 1)), std::out_of_range);
}

TEST_CASE("atlas manifest lists every kind with its rank") {
  FamilySpec spec;
  spec.family = Family::DRLNP;
  spec.n = 3;
  spec.d = 2;
  CnfInstance inst = generate(spec);
  std::string m = inst.atlas.manifest();
  CHECK(m.find("c atlas L 0 1 box 3 3") != std::string::npos);
  CHECK(m.find("c atlas S 1 10 box 3 3") != std::string::npos);
  CHECK(m.find("c atlas R 2 19 box 2 3") != std::string::npos);
}
