#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "resd/games.hpp"

namespace resd {
namespace games {

Disjunction make_disjunction(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i)
    if (lits[i].atom == lits[i - 1].atom)
      throw std::invalid_argument("disjunction with complementary literals");
  return Disjunction{std::move(lits)};
}

bool Record::has(int32_t id) const { return std::binary_search(ids.begin(), ids.end(), id); }

Record Record::with(int32_t id) const {
  Record r = *this;
  auto it = std::lower_bound(r.ids.begin(), r.ids.end(), id);
  if (it == r.ids.end() || *it != id) r.ids.insert(it, id);
  return r;
}

Record Record::without(int32_t id) const {
  Record r = *this;
  auto it = std::lower_bound(r.ids.begin(), r.ids.end(), id);
  if (it != r.ids.end() && *it == id) r.ids.erase(it);
  return r;
}

int32_t BranchingProgram::intern(Disjunction dj) {
  auto it = interned_.find(dj);
  if (it != interned_.end()) return it->second;
  int32_t id = static_cast<int32_t>(pool.size());
  interned_.emplace(dj, id);
  pool.push_back(std::move(dj));
  return id;
}

size_t BranchingProgram::sink_count() const {
  size_t c = 0;
  for (const auto& v : nodes)
    if (v.kind == BpKind::Sink) ++c;
  return c;
}

std::vector<DnfLine> BranchingProgram::sink_multiset() const {
  std::vector<DnfLine> out;
  for (const auto& v : nodes)
    if (v.kind == BpKind::Sink) out.push_back(normalize(v.sink_line));
  std::sort(out.begin(), out.end());
  return out;
}

bool BranchingProgram::is_tree() const {
  std::vector<int> indeg(nodes.size(), 0);
  for (const auto& v : nodes) {
    if (v.yes >= 0) ++indeg[static_cast<size_t>(v.yes)];
    if (v.no >= 0) ++indeg[static_cast<size_t>(v.no)];
    if (v.child >= 0) ++indeg[static_cast<size_t>(v.child)];
  }
  for (size_t i = 1; i < nodes.size(); ++i)
    if (indeg[i] > 1) return false;
  return true;
}

namespace {

// every literal of dj contradicts a literal of t
bool disj_refutes_term(const Disjunction& dj, const Term& t) {
  if (dj.lits.empty()) return false;
  for (const auto& l : dj.lits)
    if (!t.contains(l.negated())) return false;
  return true;
}

}  // namespace

BpReport bp_validate(const BranchingProgram& bp, const CnfInstance& inst,
                     std::optional<int> param_k) {
  BpReport rep;
  auto fail = [&](int node, std::string why) {
    rep.valid = false;
    rep.fail_node = node;
    rep.reason = std::move(why);
    return rep;
  };
  if (bp.nodes.empty()) return fail(-1, "empty program");
  if (!bp.nodes[0].record.ids.empty()) return fail(0, "source record must be empty");

  std::set<DnfLine> axioms;
  for (const auto& l : inst.lines) axioms.insert(normalize(l));

  // read-only lookup into the pool; absent disjunctions cannot be in records
  std::map<Disjunction, int32_t> pool_ids;
  for (size_t i = 0; i < bp.pool.size(); ++i)
    pool_ids.emplace(bp.pool[i], static_cast<int32_t>(i));
  auto find_id = [&](const Disjunction& dj) -> int32_t {
    auto it = pool_ids.find(dj);
    return it == pool_ids.end() ? -1 : it->second;
  };

  for (int id = 0; id < static_cast<int>(bp.nodes.size()); ++id) {
    const auto& v = bp.nodes[static_cast<size_t>(id)];
    for (int32_t r : v.record.ids)
      if (bp.disj(r).width() > static_cast<size_t>(bp.d)) return fail(id, "record width breach");
    auto child_ok = [&](int c) { return c > id && c < static_cast<int>(bp.nodes.size()); };
    switch (v.kind) {
      case BpKind::QueryNew: {
        if (!child_ok(v.yes) || !child_ok(v.no)) return fail(id, "bad child link");
        const auto& q = bp.disj(v.query);
        if (q.width() == 0 || q.width() > static_cast<size_t>(bp.d))
          return fail(id, "query width breach");
        Record yes = v.record.with(v.query);
        if (bp.nodes[static_cast<size_t>(v.yes)].record != yes)
          return fail(id, "query-new true child record mismatch");
        Record no = v.record;
        for (const auto& l : q.lits) {
          int32_t u = find_id(make_disjunction({l.negated()}));
          if (u < 0) return fail(id, "query-new false child record mismatch");
          no = no.with(u);
        }
        if (bp.nodes[static_cast<size_t>(v.no)].record != no)
          return fail(id, "query-new false child record mismatch");
        ++rep.queries;
        break;
      }
      case BpKind::QuerySplit: {
        if (!child_ok(v.yes) || !child_ok(v.no)) return fail(id, "bad child link");
        const auto& p1 = bp.disj(v.query);
        const auto& p2 = bp.disj(v.query2);
        if (p1.lits.empty() || p2.lits.empty()) return fail(id, "split part empty");
        std::vector<Literal> whole = p1.lits;
        whole.insert(whole.end(), p2.lits.begin(), p2.lits.end());
        int32_t wid = find_id(make_disjunction(std::move(whole)));
        if (wid < 0 || !v.record.has(wid)) return fail(id, "split of unknown disjunction");
        Record base = v.record.without(wid);
        if (bp.nodes[static_cast<size_t>(v.yes)].record != base.with(v.query))
          return fail(id, "query-split true child record mismatch");
        if (bp.nodes[static_cast<size_t>(v.no)].record != base.with(v.query2))
          return fail(id, "query-split false child record mismatch");
        ++rep.queries;
        break;
      }
      case BpKind::Forget: {
        if (!child_ok(v.child)) return fail(id, "bad child link");
        Record r = v.record;
        for (int32_t dr : v.dropped) {
          if (!r.has(dr)) return fail(id, "forgetting an absent disjunction");
          r = r.without(dr);
        }
        if (bp.nodes[static_cast<size_t>(v.child)].record != r)
          return fail(id, "forget child record mismatch");
        break;
      }
      case BpKind::ForgetWiden: {
        if (!child_ok(v.child)) return fail(id, "bad child link");
        if (!v.record.has(v.widen_from)) return fail(id, "widening an absent disjunction");
        std::vector<Literal> wl = bp.disj(v.widen_from).lits;
        const auto& extra = bp.disj(v.widen_extra).lits;
        wl.insert(wl.end(), extra.begin(), extra.end());
        Disjunction wide = make_disjunction(std::move(wl));
        if (wide.width() > static_cast<size_t>(bp.d)) return fail(id, "record width breach");
        int32_t wid = find_id(wide);
        if (wid < 0) return fail(id, "widen child record mismatch");
        Record r = v.record.without(v.widen_from).with(wid);
        if (bp.nodes[static_cast<size_t>(v.child)].record != r)
          return fail(id, "widen child record mismatch");
        break;
      }
      case BpKind::Sink: {
        DnfLine line = normalize(v.sink_line);
        bool known = axioms.count(line) != 0;
        if (v.sink_is_param) {
          if (!param_k) return fail(id, "parameterized sink without k");
          if (!is_parameterized_axiom(line, *param_k))
            return fail(id, "sink line fails parameterized shape");
          known = true;
        }
        if (!known) return fail(id, "sink labels a non-axiom line");
        for (const auto& t : line.terms) {
          bool refuted = false;
          for (int32_t r : v.record.ids)
            if (disj_refutes_term(bp.disj(r), t)) {
              refuted = true;
              break;
            }
          if (!refuted) return fail(id, "sink record does not falsify its line");
        }
        ++rep.sinks;
        break;
      }
    }
  }
  rep.valid = true;
  return rep;
}

// ---------------------------------------------------------------------------
// program -> refutation
// ---------------------------------------------------------------------------

namespace {

Term negate_disj(const Disjunction& d) { return negate_to_term(d.lits); }

struct RefBuilder {
  Refutation proof;

  int axiom(DnfLine l) { return proof.add_axiom(std::move(l)); }
  int param_axiom(DnfLine l) { return proof.add(std::move(l), RuleApp{Rule::ParamAxiom}); }
  int patch_singleton(int id, const Literal& l) {
    DnfLine c = conclude_weaken_add(proof.lines[static_cast<size_t>(id)].line, {l});
    RuleApp app;
    app.rule = Rule::WeakenAdd;
    app.prem = {id, -1};
    app.w1 = {l};
    return proof.add(std::move(c), std::move(app));
  }
  int patch_term(int id, const Term& t) {
    DnfLine c = conclude_weaken_add(proof.lines[static_cast<size_t>(id)].line, t.lits);
    RuleApp app;
    app.rule = Rule::WeakenAdd;
    app.prem = {id, -1};
    app.w1 = t.lits;
    return proof.add(std::move(c), std::move(app));
  }
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

Refutation bp_to_refutation(const BranchingProgram& bp, const CnfInstance& inst) {
  RefBuilder rb;
  rb.proof.d = bp.d;
  rb.proof.tree_like = bp.is_tree();
  rb.proof.instance_name = inst.spec.str();
  std::vector<int> line_of(bp.nodes.size(), -1);

  for (int id = static_cast<int>(bp.nodes.size()) - 1; id >= 0; --id) {
    const auto& v = bp.nodes[static_cast<size_t>(id)];
    switch (v.kind) {
      case BpKind::Sink: {
        DnfLine line = normalize(v.sink_line);
        int cur = v.sink_is_param ? rb.param_axiom(line) : rb.axiom(line);
        // align wide axiom terms with the record's refuting disjunctions
        for (const auto& t : line.terms) {
          if (t.width() == 1) continue;
          // find the refuting disjunction and narrow the term to it
          for (int32_t r : v.record.ids) {
            const auto& dj = bp.disj(r);
            if (!disj_refutes_term(dj, t)) continue;
            Term kept = negate_disj(dj);
            if (kept == t) break;
            std::vector<Literal> dropped;
            for (const auto& l : t.lits)
              if (!kept.contains(l)) dropped.push_back(l);
            cur = rb.weaken_drop(cur, kept.lits, dropped);
            break;
          }
        }
        line_of[static_cast<size_t>(id)] = cur;
        break;
      }
      case BpKind::QueryNew: {
        const auto& q = bp.disj(v.query);
        int pos = line_of[static_cast<size_t>(v.no)];
        for (const auto& l : q.lits)
          if (!rb.line(pos).has_singleton(l)) pos = rb.patch_singleton(pos, l);
        int negside = line_of[static_cast<size_t>(v.yes)];
        Term nt = negate_disj(q);
        if (!rb.line(negside).has_term(nt)) negside = rb.patch_term(negside, nt);
        line_of[static_cast<size_t>(id)] = rb.cut(pos, negside, q.lits);
        break;
      }
      case BpKind::QuerySplit: {
        Term t1 = negate_disj(bp.disj(v.query));
        Term t2 = negate_disj(bp.disj(v.query2));
        int a = line_of[static_cast<size_t>(v.yes)];
        if (!rb.line(a).has_term(t1)) a = rb.patch_term(a, t1);
        int b = line_of[static_cast<size_t>(v.no)];
        if (!rb.line(b).has_term(t2)) b = rb.patch_term(b, t2);
        line_of[static_cast<size_t>(id)] = rb.and_intro(a, b, t1.lits, t2.lits);
        break;
      }
      case BpKind::Forget: {
        int cur = line_of[static_cast<size_t>(v.child)];
        for (int32_t dr : v.dropped) cur = rb.patch_term(cur, negate_disj(bp.disj(dr)));
        line_of[static_cast<size_t>(id)] = cur;
        break;
      }
      case BpKind::ForgetWiden: {
        std::vector<Literal> wl = bp.disj(v.widen_from).lits;
        const auto& extra = bp.disj(v.widen_extra).lits;
        wl.insert(wl.end(), extra.begin(), extra.end());
        Disjunction wide = make_disjunction(std::move(wl));
        Term full = negate_disj(wide);
        int cur = line_of[static_cast<size_t>(v.child)];
        if (!rb.line(cur).has_term(full)) cur = rb.patch_term(cur, full);
        Term kept = negate_disj(bp.disj(v.widen_from));
        std::vector<Literal> dropped;
        for (const auto& l : full.lits)
          if (!kept.contains(l)) dropped.push_back(l);
        line_of[static_cast<size_t>(id)] = rb.weaken_drop(cur, kept.lits, dropped);
        break;
      }
    }
  }
  // some parameterized sink may exist; mark the mode from the sinks
  for (const auto& v : bp.nodes)
    if (v.kind == BpKind::Sink && v.sink_is_param && !rb.proof.param_k) {
      rb.proof.param_k = static_cast<int>(normalize(v.sink_line).terms.size()) - 1;
    }
  return std::move(rb.proof);
}

// ---------------------------------------------------------------------------
// refutation -> program
// ---------------------------------------------------------------------------

namespace {

struct ProtoNode {
  BpNode node;
  // children as proto indices, patched into yes/no/child later
  int pyes = -1, pno = -1, pchild = -1;
};

}  // namespace

BranchingProgram refutation_to_bp(const Refutation& proof) {
  BranchingProgram bp;
  bp.d = proof.d;
  std::vector<ProtoNode> protos;
  std::vector<int> proto_of(proof.lines.size(), -1);

  auto record_of_line = [&](const DnfLine& l) {
    Record r;
    for (const auto& t : l.terms) {
      std::vector<Literal> lits;
      for (const auto& x : t.lits) lits.push_back(x.negated());
      r = r.with(bp.intern(make_disjunction(std::move(lits))));
    }
    return r;
  };

  // bridge from a wider record down to the premise's own record
  auto forge_to = [&](const Record& from, int target_proto) -> int {
    const Record& to = protos[static_cast<size_t>(target_proto)].node.record;
    if (from == to) return target_proto;
    std::vector<int32_t> diff;
    for (int32_t id : from.ids)
      if (!to.has(id)) diff.push_back(id);
    Record check = from;
    for (int32_t id : diff) check = check.without(id);
    if (check != to) throw std::logic_error("refutation_to_bp: premise record mismatch");
    ProtoNode f;
    f.node.kind = BpKind::Forget;
    f.node.record = from;
    f.node.dropped = std::move(diff);
    f.pchild = target_proto;
    protos.push_back(std::move(f));
    return static_cast<int>(protos.size()) - 1;
  };

  for (size_t i = 0; i < proof.lines.size(); ++i) {
    const auto& pl = proof.lines[i];
    ProtoNode p;
    p.node.record = record_of_line(pl.line);
    int self = -1;
    switch (pl.app.rule) {
      case Rule::Axiom:
      case Rule::ParamAxiom: {
        p.node.kind = BpKind::Sink;
        p.node.sink_line = pl.line;
        p.node.sink_is_param = pl.app.rule == Rule::ParamAxiom;
        protos.push_back(std::move(p));
        self = static_cast<int>(protos.size()) - 1;
        break;
      }
      case Rule::Cut: {
        p.node.kind = BpKind::QueryNew;
        p.node.query = bp.intern(make_disjunction(pl.app.w1));
        int posid = proto_of[static_cast<size_t>(pl.app.prem[static_cast<size_t>(pl.app.pos_premise)])];
        int negid = proto_of[static_cast<size_t>(pl.app.prem[static_cast<size_t>(1 - pl.app.pos_premise)])];
        Record yes = p.node.record.with(p.node.query);
        Record no = p.node.record;
        for (const auto& l : pl.app.w1) no = no.with(bp.intern(make_disjunction({l.negated()})));
        protos.push_back(std::move(p));
        self = static_cast<int>(protos.size()) - 1;
        protos[static_cast<size_t>(self)].pyes = forge_to(yes, negid);
        protos[static_cast<size_t>(self)].pno = forge_to(no, posid);
        break;
      }
      case Rule::AndIntro: {
        p.node.kind = BpKind::QuerySplit;
        std::vector<Literal> n1, n2;
        for (const auto& l : pl.app.w1) n1.push_back(l.negated());
        for (const auto& l : pl.app.w2) n2.push_back(l.negated());
        p.node.query = bp.intern(make_disjunction(n1));
        p.node.query2 = bp.intern(make_disjunction(n2));
        std::vector<Literal> whole = n1;
        whole.insert(whole.end(), n2.begin(), n2.end());
        int32_t wid = bp.intern(make_disjunction(std::move(whole)));
        Record base = p.node.record.without(wid);
        Record yes = base.with(p.node.query);
        Record no = base.with(p.node.query2);
        int aid = proto_of[static_cast<size_t>(pl.app.prem[0])];
        int bid = proto_of[static_cast<size_t>(pl.app.prem[1])];
        protos.push_back(std::move(p));
        self = static_cast<int>(protos.size()) - 1;
        protos[static_cast<size_t>(self)].pyes = forge_to(yes, aid);
        protos[static_cast<size_t>(self)].pno = forge_to(no, bid);
        break;
      }
      case Rule::WeakenAdd: {
        p.node.kind = BpKind::Forget;
        int cid = proto_of[static_cast<size_t>(pl.app.prem[0])];
        const Record& target = protos[static_cast<size_t>(cid)].node.record;
        for (int32_t id : p.node.record.ids)
          if (!target.has(id)) p.node.dropped.push_back(id);
        p.pchild = cid;
        Record check = p.node.record;
        for (int32_t id : p.node.dropped) check = check.without(id);
        if (check != target) throw std::logic_error("refutation_to_bp: weaken-add mismatch");
        protos.push_back(std::move(p));
        self = static_cast<int>(protos.size()) - 1;
        break;
      }
      case Rule::WeakenDrop: {
        p.node.kind = BpKind::ForgetWiden;
        std::vector<Literal> kept_neg;
        for (const auto& l : pl.app.w1) kept_neg.push_back(l.negated());
        std::vector<Literal> extra_neg;
        for (const auto& l : pl.app.w2) extra_neg.push_back(l.negated());
        p.node.widen_from = bp.intern(make_disjunction(kept_neg));
        p.node.widen_extra = bp.intern(make_disjunction(extra_neg));
        std::vector<Literal> whole = kept_neg;
        whole.insert(whole.end(), extra_neg.begin(), extra_neg.end());
        int32_t wid = bp.intern(make_disjunction(std::move(whole)));
        Record prescribed = p.node.record.without(p.node.widen_from).with(wid);
        int cid = proto_of[static_cast<size_t>(pl.app.prem[0])];
        protos.push_back(std::move(p));
        self = static_cast<int>(protos.size()) - 1;
        protos[static_cast<size_t>(self)].pchild = forge_to(prescribed, cid);
        break;
      }
    }
    proto_of[i] = self;
  }

  // reachable part from the final line's node in topological order
  // (iterative DFS postorder, reversed), so parents precede children
  int root = proto_of[proof.lines.size() - 1];
  std::vector<int> order;
  {
    std::vector<int8_t> state(protos.size(), 0);  // 0 new, 1 open, 2 done
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
      auto [x, phase] = stack.back();
      stack.pop_back();
      const auto& p = protos[static_cast<size_t>(x)];
      if (phase == 0) {
        if (state[static_cast<size_t>(x)] != 0) continue;
        state[static_cast<size_t>(x)] = 1;
        stack.push_back({x, 1});
        for (int c : {p.pyes, p.pno, p.pchild})
          if (c >= 0 && state[static_cast<size_t>(c)] == 0) stack.push_back({c, 0});
      } else {
        state[static_cast<size_t>(x)] = 2;
        order.push_back(x);
      }
    }
    std::reverse(order.begin(), order.end());
  }

  std::vector<int> newid(protos.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) newid[static_cast<size_t>(order[i])] = static_cast<int>(i);
  for (int x : order) {
    ProtoNode& p = protos[static_cast<size_t>(x)];
    BpNode node = p.node;
    node.yes = p.pyes >= 0 ? newid[static_cast<size_t>(p.pyes)] : -1;
    node.no = p.pno >= 0 ? newid[static_cast<size_t>(p.pno)] : -1;
    node.child = p.pchild >= 0 ? newid[static_cast<size_t>(p.pchild)] : -1;
    bp.nodes.push_back(std::move(node));
  }
  return bp;
}

// ---------------------------------------------------------------------------
// sweep programs for the induction families
// ---------------------------------------------------------------------------

namespace {

struct ProgBuilder {
  BranchingProgram bp;

  int add(BpNode node) {
    bp.nodes.push_back(std::move(node));
    return static_cast<int>(bp.nodes.size()) - 1;
  }
};

}  // namespace

BranchingProgram induction_program(const CnfInstance& inst) {
  const int n = inst.spec.n;
  const int d = inst.spec.d;
  if (inst.spec.family != Family::DRIP) throw std::invalid_argument("expects a relativized induction instance");
  ProgBuilder pb;
  pb.bp.d = d + 1;

  auto level_disj = [&](int i) {
    std::vector<Literal> lits;
    for (int p = 1; p <= d; ++p) lits.push_back(neg(atom(Kind::R, p, i)));
    lits.push_back(neg(atom(Kind::P1, i)));
    return make_disjunction(std::move(lits));
  };
  auto unit = [&](Literal l) { return pb.bp.intern(make_disjunction({l})); };

  // sink helpers build the axiom lines directly
  auto sink = [&](const Record& rec, DnfLine line) {
    BpNode v;
    v.kind = BpKind::Sink;
    v.record = rec;
    v.sink_line = std::move(line);
    return pb.add(std::move(v));
  };
  auto axiom_step_rel = [&](int i, int j, int p) {
    std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
    for (int q = 1; q <= d; ++q) lits.push_back(neg(atom(Kind::R, q, i)));
    lits.push_back(lit(atom(Kind::R, p, j)));
    return clause_of(std::move(lits));
  };
  auto axiom_step = [&](int i, int j) {
    std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
    for (int q = 1; q <= d; ++q) lits.push_back(neg(atom(Kind::R, q, i)));
    lits.push_back(neg(atom(Kind::P1, i)));
    lits.push_back(lit(atom(Kind::P1, j)));
    return clause_of(std::move(lits));
  };

  // split chain of the remembered level disjunction of j, ending at
  // step axioms against (i, j); returns the chain head
  std::function<int(Record, std::vector<Literal>, int, int, int)> split_chain =
      [&](Record rec, std::vector<Literal> rest, int i, int j, int p) -> int {
    // rest = {~R^p_j .. ~R^d_j, ~P_j}
    if (rest.size() == 1) {
      return sink(rec, axiom_step(i, j));
    }
    BpNode v;
    v.kind = BpKind::QuerySplit;
    v.record = rec;
    std::vector<Literal> part2(rest.begin() + 1, rest.end());
    v.query = pb.bp.intern(make_disjunction({rest[0]}));
    v.query2 = pb.bp.intern(make_disjunction(part2));
    int32_t whole = pb.bp.intern(make_disjunction(rest));
    Record base = rec.without(whole);
    int self = pb.add(std::move(v));
    int ys = sink(base.with(pb.bp.nodes[static_cast<size_t>(self)].query), axiom_step_rel(i, j, p));
    int no = split_chain(base.with(pb.bp.nodes[static_cast<size_t>(self)].query2), part2, i, j, p + 1);
    pb.bp.nodes[static_cast<size_t>(self)].yes = ys;
    pb.bp.nodes[static_cast<size_t>(self)].no = no;
    return self;
  };

  std::function<int(Record, int)> trunk = [&](Record rec, int i) -> int {
    BpNode v;
    v.kind = BpKind::QueryNew;
    v.record = rec;
    Disjunction q = level_disj(i);
    v.query = pb.bp.intern(q);
    int self = pb.add(std::move(v));
    // false branch: units R^p_i, P_i
    Record frec = rec;
    for (const auto& l : q.lits) frec = frec.with(unit(l.negated()));
    int fchild;
    if (i == n) {
      fchild = sink(frec, clause_of({neg(atom(Kind::P1, n))}));
    } else {
      // witness row S_{i,n} .. S_{i,i+1}
      std::vector<Literal> row;
      for (int j = n; j >= i + 1; --j) row.push_back(lit(atom(Kind::S2, i, j)));
      std::function<int(Record, size_t)> srow = [&](Record r, size_t pos) -> int {
        if (pos == row.size()) {
          std::vector<Literal> lits;
          for (int j = i + 1; j <= n; ++j) lits.push_back(lit(atom(Kind::S2, i, j)));
          return sink(r, clause_of(std::move(lits)));
        }
        BpNode sv;
        sv.kind = BpKind::QueryNew;
        sv.record = r;
        sv.query = unit(row[pos]);
        int sself = pb.add(std::move(sv));
        int j = row[pos].atom.idx[1];
        Record yrec = r.with(unit(row[pos]));
        std::vector<Literal> level = level_disj(j).lits;
        int ys = split_chain(yrec, level, i, j, 1);
        Record nrec = r.with(unit(row[pos].negated()));
        int no = srow(nrec, pos + 1);
        pb.bp.nodes[static_cast<size_t>(sself)].yes = ys;
        pb.bp.nodes[static_cast<size_t>(sself)].no = no;
        return sself;
      };
      fchild = srow(frec, 0);
    }
    // true branch: remember the disjunction, descend
    Record trec = rec.with(pb.bp.nodes[static_cast<size_t>(self)].query);
    int tchild;
    if (i == 1) {
      // split the remembered level-1 disjunction into pure-literal sinks
      std::function<int(Record, std::vector<Literal>, int)> final_chain =
          [&](Record r, std::vector<Literal> rest, int p) -> int {
        if (rest.size() == 1) return sink(r, clause_of({lit(atom(Kind::P1, 1))}));
        BpNode sv;
        sv.kind = BpKind::QuerySplit;
        sv.record = r;
        std::vector<Literal> part2(rest.begin() + 1, rest.end());
        sv.query = pb.bp.intern(make_disjunction({rest[0]}));
        sv.query2 = pb.bp.intern(make_disjunction(part2));
        int32_t whole = pb.bp.intern(make_disjunction(rest));
        Record base = r.without(whole);
        int sself = pb.add(std::move(sv));
        int ys = sink(base.with(pb.bp.nodes[static_cast<size_t>(sself)].query),
                      clause_of({lit(atom(Kind::R, p, 1))}));
        int no = final_chain(base.with(pb.bp.nodes[static_cast<size_t>(sself)].query2), part2, p + 1);
        pb.bp.nodes[static_cast<size_t>(sself)].yes = ys;
        pb.bp.nodes[static_cast<size_t>(sself)].no = no;
        return sself;
      };
      tchild = final_chain(trec, level_disj(1).lits, 1);
    } else {
      tchild = trunk(trec, i - 1);
    }
    pb.bp.nodes[static_cast<size_t>(self)].yes = tchild;
    pb.bp.nodes[static_cast<size_t>(self)].no = fchild;
    return self;
  };

  trunk(Record{}, n);
  return pb.bp;
}

BranchingProgram vectorized_induction_program(const CnfInstance& inst) {
  const int n = inst.spec.n;
  const int d = inst.spec.d;
  if (inst.spec.family != Family::DRVIP)
    throw std::invalid_argument("expects a vectorized induction instance");
  ProgBuilder pb;
  pb.bp.d = d + 1;

  auto level_disj = [&](int i, int j) {
    std::vector<Literal> lits;
    for (int p = 1; p <= d; ++p) lits.push_back(neg(atom(Kind::R, p, i)));
    lits.push_back(neg(atom(Kind::P2, i, j)));
    return make_disjunction(std::move(lits));
  };
  auto unit = [&](Literal l) { return pb.bp.intern(make_disjunction({l})); };
  auto sink = [&](const Record& rec, DnfLine line) {
    BpNode v;
    v.kind = BpKind::Sink;
    v.record = rec;
    v.sink_line = std::move(line);
    return pb.add(std::move(v));
  };
  auto axiom_step_rel = [&](int i, int j, int l, int m, int p) {
    std::vector<Literal> lits{neg(atom(Kind::S4, i, j, l, m))};
    for (int q = 1; q <= d; ++q) lits.push_back(neg(atom(Kind::R, q, i)));
    lits.push_back(neg(atom(Kind::P2, i, j)));
    lits.push_back(lit(atom(Kind::R, p, l)));
    return clause_of(std::move(lits));
  };
  auto axiom_step = [&](int i, int j, int l, int m) {
    std::vector<Literal> lits{neg(atom(Kind::S4, i, j, l, m))};
    for (int q = 1; q <= d; ++q) lits.push_back(neg(atom(Kind::R, q, i)));
    lits.push_back(neg(atom(Kind::P2, i, j)));
    lits.push_back(lit(atom(Kind::P2, l, m)));
    return clause_of(std::move(lits));
  };

  std::function<int(Record, std::vector<Literal>, int, int, int, int, int)> split_chain =
      [&](Record rec, std::vector<Literal> rest, int i, int j, int l, int m, int p) -> int {
    if (rest.size() == 1) return sink(rec, axiom_step(i, j, l, m));
    BpNode v;
    v.kind = BpKind::QuerySplit;
    v.record = rec;
    std::vector<Literal> part2(rest.begin() + 1, rest.end());
    v.query = pb.bp.intern(make_disjunction({rest[0]}));
    v.query2 = pb.bp.intern(make_disjunction(part2));
    int32_t whole = pb.bp.intern(make_disjunction(rest));
    Record base = rec.without(whole);
    int self = pb.add(std::move(v));
    int ys = sink(base.with(pb.bp.nodes[static_cast<size_t>(self)].query), axiom_step_rel(i, j, l, m, p));
    int no = split_chain(base.with(pb.bp.nodes[static_cast<size_t>(self)].query2), part2, i, j, l, m, p + 1);
    pb.bp.nodes[static_cast<size_t>(self)].yes = ys;
    pb.bp.nodes[static_cast<size_t>(self)].no = no;
    return self;
  };

  // trunk positions (i, j), i = n..1, j = n..1
  std::function<int(Record, int, int)> trunk = [&](Record rec, int i, int j) -> int {
    BpNode v;
    v.kind = BpKind::QueryNew;
    v.record = rec;
    Disjunction q = level_disj(i, j);
    v.query = pb.bp.intern(q);
    int self = pb.add(std::move(v));
    Record frec = rec;
    for (const auto& l : q.lits) frec = frec.with(unit(l.negated()));
    int fchild;
    if (i == n) {
      fchild = sink(frec, clause_of({neg(atom(Kind::P2, n, j))}));
    } else {
      // witness row over (l, m), l = n..i+1, m = n..1
      std::function<int(Record, int, int)> srow = [&](Record r, int l, int m) -> int {
        if (l == i) {
          std::vector<Literal> lits;
          for (int ll = i + 1; ll <= n; ++ll)
            for (int mm = 1; mm <= n; ++mm) lits.push_back(lit(atom(Kind::S4, i, j, ll, mm)));
          return sink(r, clause_of(std::move(lits)));
        }
        BpNode sv;
        sv.kind = BpKind::QueryNew;
        sv.record = r;
        Literal sl = lit(atom(Kind::S4, i, j, l, m));
        sv.query = unit(sl);
        int sself = pb.add(std::move(sv));
        Record yrec = r.with(unit(sl));
        int ys = split_chain(yrec, level_disj(l, m).lits, i, j, l, m, 1);
        Record nrec = r.with(unit(sl.negated()));
        int nl = l, nm = m - 1;
        if (nm == 0) {
          nl = l - 1;
          nm = n;
        }
        int no = srow(nrec, nl, nm);
        pb.bp.nodes[static_cast<size_t>(sself)].yes = ys;
        pb.bp.nodes[static_cast<size_t>(sself)].no = no;
        return sself;
      };
      fchild = srow(frec, n, n);
    }
    Record trec = rec.with(pb.bp.nodes[static_cast<size_t>(self)].query);
    int tchild;
    if (i == 1 && j == 1) {
      std::function<int(Record, std::vector<Literal>, int)> final_chain =
          [&](Record r, std::vector<Literal> rest, int p) -> int {
        if (rest.size() == 1) return sink(r, clause_of({lit(atom(Kind::P2, 1, 1))}));
        BpNode sv;
        sv.kind = BpKind::QuerySplit;
        sv.record = r;
        std::vector<Literal> part2(rest.begin() + 1, rest.end());
        sv.query = pb.bp.intern(make_disjunction({rest[0]}));
        sv.query2 = pb.bp.intern(make_disjunction(part2));
        int32_t whole = pb.bp.intern(make_disjunction(rest));
        Record base = r.without(whole);
        int sself = pb.add(std::move(sv));
        int ys = sink(base.with(pb.bp.nodes[static_cast<size_t>(sself)].query),
                      clause_of({lit(atom(Kind::R, p, 1))}));
        int no = final_chain(base.with(pb.bp.nodes[static_cast<size_t>(sself)].query2), part2, p + 1);
        pb.bp.nodes[static_cast<size_t>(sself)].yes = ys;
        pb.bp.nodes[static_cast<size_t>(sself)].no = no;
        return sself;
      };
      tchild = final_chain(trec, level_disj(1, 1).lits, 1);
    } else {
      int ni = i, nj = j - 1;
      if (nj == 0) {
        ni = i - 1;
        nj = n;
      }
      tchild = trunk(trec, ni, nj);
    }
    pb.bp.nodes[static_cast<size_t>(self)].yes = tchild;
    pb.bp.nodes[static_cast<size_t>(self)].no = fchild;
    return self;
  };

  trunk(Record{}, n, n);
  return pb.bp;
}

}  // namespace games
}  // namespace resd
