#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resd/constructions.hpp"
#include "resd/games.hpp"

using namespace resd;
using namespace resd::games;

namespace {

CnfInstance gen(Family f, int n, int d = 0, int k = 0) {
  FamilySpec spec;
  spec.family = f;
  spec.n = n;
  spec.d = d;
  spec.k = k;
  return generate(spec);
}

}  // namespace

TEST_CASE("the sweep program for the induction family validates") {
  CnfInstance inst = gen(Family::DRIP, 4, 1);
  BranchingProgram bp = induction_program(inst);
  auto rep = bp_validate(bp, inst);
  INFO(rep.reason, " at node ", rep.fail_node);
  CHECK(rep.valid);
  CHECK(bp.is_tree());
}

TEST_CASE("a sink must falsify its line") {
  CnfInstance inst = gen(Family::DRIP, 3, 1);
  BranchingProgram bp = induction_program(inst);
  // corrupt one sink so its record no longer refutes the label
  for (auto& v : bp.nodes)
    if (v.kind == BpKind::Sink) {
      v.record = Record{};
      break;
    }
  auto rep = bp_validate(bp, inst);
  CHECK(!rep.valid);
}

TEST_CASE("single-vertex program on an instance with the empty clause") {
  CnfInstance inst;
  inst.spec.family = Family::IP;
  inst.spec.n = 2;
  inst.atlas = VariableAtlas({{Kind::P1, {2}}});
  inst.lines.push_back(DnfLine{});
  inst.tags.push_back("empty");
  BranchingProgram bp;
  bp.d = 1;
  BpNode sink;
  sink.kind = BpKind::Sink;
  sink.sink_line = DnfLine{};
  bp.nodes.push_back(sink);
  auto rep = bp_validate(bp, inst);
  CHECK(rep.valid);
}

TEST_CASE("conversions between programs and refutations") {
  SUBCASE("one cut maps to one query") {
    Refutation proof;
    proof.d = 1;
    Atom x = atom(Kind::P1, 1);
    int a = proof.add_axiom(clause_of({lit(x)}));
    int b = proof.add_axiom(clause_of({neg(x)}));
    RuleApp cut;
    cut.rule = Rule::Cut;
    cut.prem = {a, b};
    cut.pos_premise = 0;
    cut.w1 = {lit(x)};
    proof.add(DnfLine{}, cut);
    BranchingProgram bp = refutation_to_bp(proof);
    CHECK(bp.nodes.size() == 3);
    size_t queries = 0;
    for (const auto& v : bp.nodes)
      if (v.kind == BpKind::QueryNew) ++queries;
    CHECK(queries == 1);
    CnfInstance inst;
    inst.spec.family = Family::IP;
    inst.spec.n = 2;
    inst.atlas = VariableAtlas({{Kind::P1, {2}}});
    inst.lines = {clause_of({lit(x)}), clause_of({neg(x)})};
    inst.tags = {"a", "b"};
    CHECK(bp_validate(bp, inst).valid);
  }
  SUBCASE("the vectorized sweep converts and checks") {
    CnfInstance inst = gen(Family::DRVIP, 3, 1);
    BranchingProgram bp = vectorized_induction_program(inst);
    REQUIRE(bp_validate(bp, inst).valid);
    Refutation proof = bp_to_refutation(bp, inst);
    CheckReport rep = check(inst, proof);
    INFO(rep.str());
    CHECK(rep.valid);
    CHECK(proof.d == 2);
    CHECK(verify_tree_like(proof));
  }
  SUBCASE("round trips preserve the sink multiset") {
    for (auto emitted : {constructions::refute_drip(1, 4), constructions::refute_ip(4)}) {
      REQUIRE(check(emitted.instance, emitted.proof).valid);
      BranchingProgram bp = refutation_to_bp(emitted.proof);
      auto rep = bp_validate(bp, emitted.instance, emitted.proof.param_k);
      INFO(rep.reason, " at node ", rep.fail_node);
      REQUIRE(rep.valid);
      Refutation back = bp_to_refutation(bp, emitted.instance);
      CHECK(check(emitted.instance, back).valid);
      BranchingProgram bp2 = refutation_to_bp(back);
      CHECK(bp.sink_multiset() == bp2.sink_multiset());
      CHECK(bp2.is_tree() == bp.is_tree());
    }
  }
}

TEST_CASE("adversary answers follow the prescribed cases") {
  SUBCASE("witness query to a retired element is denied") {
    GameState s = initial_state(Variant::RIP, 6, 1, 0);
    // element 5 is retired up front (the block below the top)
    auto r = adversary_answer(s, make_disjunction({lit(atom(Kind::S2, 1, 5))}));
    CHECK(!r.free_choice);
    CHECK(!r.forced_value);
    CHECK(r.next_false.free_above_source() == s.free_above_source());
  }
  SUBCASE("free element grants a split choice with witness side effects") {
    GameState s = initial_state(Variant::RIP, 6, 1, 0);
    auto r = adversary_answer(s, make_disjunction({lit(atom(Kind::P1, 3))}));
    REQUIRE(r.free_choice);
    auto vt = r.next_true.conceded.value(atom(Kind::P1, 3));
    auto rt = r.next_true.conceded.value(atom(Kind::R, 1, 3));
    REQUIRE(vt.has_value());
    REQUIRE(rt.has_value());
    CHECK(*vt);
    CHECK(!*rt);
    auto sn = r.next_true.conceded.value(atom(Kind::S2, 3, 6));
    REQUIRE(sn.has_value());
    CHECK(*sn);
    for (int j = 4; j <= 5; ++j) {
      auto sv = r.next_true.conceded.value(atom(Kind::S2, 3, j));
      REQUIRE(sv.has_value());
      CHECK(!*sv);
    }
    CHECK(r.next_true.free_above_source() == s.free_above_source() - 1);
    CHECK(r.next_false.free_above_source() == s.free_above_source() - 1);
  }
  SUBCASE("vectorized: a true property forces the predicate down") {
    GameState s = initial_state(Variant::RVIP, 6, 1, 2);
    auto r = adversary_answer(s, make_disjunction({lit(atom(Kind::P2, 3, 2))}));
    REQUIRE(r.free_choice);
    auto r2 = adversary_answer(r.next_true, make_disjunction({lit(atom(Kind::R, 1, 3))}));
    CHECK(!r2.free_choice);
    CHECK(!r2.forced_value);
  }
}

TEST_CASE("minimax values dominate the recurrence bounds") {
  SUBCASE("fibonacci floor for the base game") {
    for (int n = 4; n <= 9; ++n) {
      auto mm = min_tree_size_vs_adversary(Variant::RIP, n, 1);
      CHECK(mm.total >= fibonacci(n - 3));
    }
  }
  SUBCASE("root growth for the deeper game") {
    double rho = rho_root(2);
    CHECK(rho == doctest::Approx(1.32471).epsilon(1e-4));
    for (int n = 5; n <= 8; ++n) {
      auto mm = min_tree_size_vs_adversary(Variant::RIP, n, 2);
      double bound = std::pow(rho, n - 4);
      CHECK(static_cast<double>(mm.total) >= bound);
    }
  }
  SUBCASE("dp floor for the vectorized game") {
    CHECK(rvip_bound(6, 2) == 5);
    for (int n = 5; n <= 7; ++n)
      for (int k = 1; k <= 2; ++k) {
        auto mm = min_tree_size_vs_adversary(Variant::RVIP, n, 1, k);
        CHECK(mm.total >= rvip_bound(n, k));
      }
  }
  SUBCASE("monotone in the universe size") {
    for (int d = 1; d <= 2; ++d) {
      long long prev = 0;
      for (int n = d + 3; n <= d + 7; ++n) {
        auto mm = min_tree_size_vs_adversary(Variant::RIP, n, d);
        CHECK(mm.total >= prev);
        prev = mm.total;
      }
    }
    long long prev = 0;
    for (int n = 5; n <= 7; ++n) {
      auto mm = min_tree_size_vs_adversary(Variant::RVIP, n, 1, 2);
      CHECK(mm.total >= prev);
      prev = mm.total;
    }
  }
}

TEST_CASE("dp recurrence boundary cells") {
  CHECK(rvip_bound(4, 2) == 0);      // boundary reached immediately
  CHECK(rvip_bound(5, 2) == 2);
  // one interior cell when both margins are one
  CHECK(rvip_bound(4, 1) == 1);
  CHECK_THROWS(rvip_bound(3, 2));
}

TEST_CASE("random plays stay sound until the terminal condition") {
  {
    CnfInstance inst = gen(Family::DRIP, 6, 1);
    auto stats = random_plays(Variant::RIP, inst, 300, 17);
    CHECK(stats.caught_before_terminal == 0);
    CHECK(stats.terminal_reached == stats.plays);
  }
  {
    // width-2 queries against the deeper adversary
    CnfInstance inst = gen(Family::DRIP, 7, 2);
    auto stats = random_plays(Variant::RIP, inst, 300, 41);
    CHECK(stats.caught_before_terminal == 0);
    CHECK(stats.terminal_reached == stats.plays);
  }
  {
    CnfInstance inst = gen(Family::DRVIP, 5, 1, 2);
    inst.spec.k = 2;
    auto stats = random_plays(Variant::RVIP, inst, 300, 29);
    CHECK(stats.caught_before_terminal == 0);
  }
}

TEST_CASE("width game keeps the busy half") {
  SUBCASE("random provers") {
    int contradictions = 0;
    for (int play = 0; play < 200; ++play) {
      auto t = rlnp_width_game(8, random_width_prover, 1000 + static_cast<uint64_t>(play), 4000);
      if (t.contradiction) {
        ++contradictions;
        CHECK(t.busy_at_contradiction * 2 >= 8);
      }
    }
    CHECK(contradictions > 0);
  }
  SUBCASE("re-asking remembered variables does nothing") {
    WidthState s = width_initial(6);
    width_step(s, {false, atom(Kind::L, 1, 2)});
    auto before = s.remembered.size();
    width_step(s, {false, atom(Kind::L, 1, 2)});
    CHECK(s.remembered.size() == before);
    CHECK(!s.contradiction);
  }
  SUBCASE("greedy prover on one element keeps the witness invariant") {
    WidthState s = width_initial(6);
    for (int j = 1; j <= 6; ++j)
      if (j != 3) width_step(s, {false, atom(Kind::S2, j, 3)});
    int witnesses = 0;
    for (size_t i = 1; i < s.part.size(); ++i)
      if (s.part[i] == 1) ++witnesses;
    CHECK(s.busy_count() >= witnesses);
    CHECK(!s.contradiction);
  }
  SUBCASE("forgetting recycles elements") {
    WidthState s = width_initial(5);
    width_step(s, {false, atom(Kind::L, 1, 2)});
    CHECK(s.busy_count() == 2);
    width_step(s, {true, atom(Kind::L, 1, 2)});
    CHECK(s.busy_count() == 0);
    CHECK(s.free_count() == 5);
  }
}

TEST_CASE("conceded width-game assignments stay order consistent") {
  for (int play = 0; play < 50; ++play) {
    WidthState s = width_initial(7);
    Rng rng(4242 + static_cast<uint64_t>(play));
    for (int step = 0; step < 200 && !s.contradiction; ++step)
      width_step(s, random_width_prover(s, rng));
    if (s.contradiction) continue;
    // some strict order on the elements must satisfy every remembered fact
    // (witnesses below busy, busy by insertion order, free anywhere)
    std::vector<int> order;
    for (int i = 1; i <= 7; ++i)
      if (s.part[static_cast<size_t>(i)] == 1) order.push_back(i);
    for (int e : s.busy_order) order.push_back(e);
    for (int i = 1; i <= 7; ++i)
      if (s.part[static_cast<size_t>(i)] == 0) order.push_back(i);
    auto rank = [&](int e) {
      for (size_t i = 0; i < order.size(); ++i)
        if (order[i] == e) return static_cast<int>(i);
      return -1;
    };
    for (const auto& a : s.remembered) {
      auto v = s.conceded.value(a);
      REQUIRE(v.has_value());
      if (a.kind == Kind::L && a.idx[0] != a.idx[1])
        CHECK(*v == (rank(a.idx[0]) < rank(a.idx[1])));
    }
  }
}
