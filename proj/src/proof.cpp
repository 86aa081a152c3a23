#include "resd/proof.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "resd/rng.hpp"

namespace resd {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "axiom";
    case Rule::ParamAxiom: return "param-axiom";
    case Rule::AndIntro: return "and-intro";
    case Rule::Cut: return "cut";
    case Rule::WeakenAdd: return "weaken-add";
    case Rule::WeakenDrop: return "weaken-drop";
  }
  return "?";
}

bool rule_from_name(const std::string& s, Rule& out) {
  static const std::pair<const char*, Rule> table[] = {
      {"axiom", Rule::Axiom},         {"param-axiom", Rule::ParamAxiom},
      {"and-intro", Rule::AndIntro},  {"cut", Rule::Cut},
      {"weaken-add", Rule::WeakenAdd}, {"weaken-drop", Rule::WeakenDrop}};
  for (auto& [name, r] : table) {
    if (s == name) {
      out = r;
      return true;
    }
  }
  return false;
}

int rule_premises(Rule r) {
  switch (r) {
    case Rule::Axiom:
    case Rule::ParamAxiom: return 0;
    case Rule::WeakenAdd:
    case Rule::WeakenDrop: return 1;
    case Rule::AndIntro:
    case Rule::Cut: return 2;
  }
  return 0;
}

bool is_leaf_rule(Rule r) { return r == Rule::Axiom || r == Rule::ParamAxiom; }

size_t Refutation::rule_count() const {
  size_t c = 0;
  for (const auto& l : lines)
    if (!is_leaf_rule(l.app.rule)) ++c;
  return c;
}

std::string CheckReport::str() const {
  std::ostringstream os;
  if (valid) {
    os << "valid size=" << size;
  } else {
    os << "invalid at line " << fail_line << ": " << reason;
  }
  return os.str();
}

namespace {

DnfLine without_term(const DnfLine& l, const Term& t) {
  DnfLine out;
  out.terms.reserve(l.terms.size());
  for (const auto& x : l.terms)
    if (!(x == t)) out.terms.push_back(x);
  return out;
}

}  // namespace

DnfLine conclude_and_intro(const DnfLine& a, const DnfLine& b, const std::vector<Literal>& i1,
                           const std::vector<Literal>& i2) {
  auto t1 = make_term(i1);
  auto t2 = make_term(i2);
  if (!t1 || !t2) throw std::invalid_argument("and-intro witness is contradictory");
  DnfLine out = without_term(a, *t1);
  DnfLine rest = without_term(b, *t2);
  out.terms.insert(out.terms.end(), rest.terms.begin(), rest.terms.end());
  std::vector<Literal> both = i1;
  both.insert(both.end(), i2.begin(), i2.end());
  auto merged = make_term(std::move(both));
  if (merged) out.terms.push_back(std::move(*merged));
  return normalize(out);
}

DnfLine conclude_cut(const DnfLine& pos, const DnfLine& negside, const std::vector<Literal>& i) {
  DnfLine out = pos;
  for (const auto& l : i) out = without_term(out, Term{{l}});
  DnfLine rest = without_term(negside, negate_to_term(i));
  out.terms.insert(out.terms.end(), rest.terms.begin(), rest.terms.end());
  return normalize(out);
}

DnfLine conclude_weaken_add(const DnfLine& p, const std::vector<Literal>& term) {
  auto t = make_term(term);
  DnfLine out = p;
  if (t) out.terms.push_back(std::move(*t));
  return normalize(out);
}

DnfLine conclude_weaken_drop(const DnfLine& p, const std::vector<Literal>& kept,
                             const std::vector<Literal>& dropped) {
  std::vector<Literal> whole = kept;
  whole.insert(whole.end(), dropped.begin(), dropped.end());
  auto full = make_term(std::move(whole));
  auto keep = make_term(kept);
  if (!full || !keep) throw std::invalid_argument("weaken-drop witness is contradictory");
  DnfLine out = without_term(p, *full);
  out.terms.push_back(std::move(*keep));
  return normalize(out);
}

CheckReport check(const CnfInstance& instance, const Refutation& proof) {
  CheckReport rep;
  std::set<DnfLine> axioms;
  for (const auto& l : instance.lines) axioms.insert(normalize(l));
  std::set<DnfLine> params_used;

  auto fail = [&](int id, std::string why) {
    rep.valid = false;
    rep.fail_line = id;
    rep.reason = std::move(why);
    return rep;
  };

  if (proof.lines.empty()) return fail(-1, "empty proof");
  if (proof.d < 1) return fail(-1, "system width must be at least 1");

  for (int id = 0; id < static_cast<int>(proof.lines.size()); ++id) {
    const auto& pl = proof.lines[id];
    const auto& app = pl.app;
    if (pl.line != normalize(pl.line)) return fail(id, "line not in canonical form");
    if (pl.line.width() > static_cast<size_t>(proof.d)) return fail(id, "width breach");

    int np = rule_premises(app.rule);
    for (int p = 0; p < np; ++p) {
      if (app.prem[p] < 0 || app.prem[p] >= id) return fail(id, "dangling premise");
    }

    switch (app.rule) {
      case Rule::Axiom: {
        if (!axioms.count(pl.line)) return fail(id, "non-axiom leaf");
        break;
      }
      case Rule::ParamAxiom: {
        if (!proof.param_k) return fail(id, "param-axiom outside parameterized mode");
        if (!is_parameterized_axiom(pl.line, *proof.param_k))
          return fail(id, "line fails parameterized axiom shape");
        params_used.insert(pl.line);
        break;
      }
      case Rule::AndIntro: {
        const auto& a = proof.lines[static_cast<size_t>(app.prem[0])].line;
        const auto& b = proof.lines[static_cast<size_t>(app.prem[1])].line;
        auto t1 = make_term(app.w1);
        auto t2 = make_term(app.w2);
        if (!t1 || !t2) return fail(id, "witness mismatch");
        if (!a.has_term(*t1) || !b.has_term(*t2)) return fail(id, "witness mismatch");
        std::vector<Literal> both = app.w1;
        both.insert(both.end(), app.w2.begin(), app.w2.end());
        std::sort(both.begin(), both.end());
        both.erase(std::unique(both.begin(), both.end()), both.end());
        if (both.size() > static_cast<size_t>(proof.d)) return fail(id, "width breach");
        if (conclude_and_intro(a, b, app.w1, app.w2) != pl.line)
          return fail(id, "and-intro conclusion mismatch");
        break;
      }
      case Rule::Cut: {
        if (app.pos_premise != 0 && app.pos_premise != 1) return fail(id, "witness mismatch");
        if (app.w1.empty()) return fail(id, "witness mismatch");
        const auto& pos = proof.lines[static_cast<size_t>(app.prem[app.pos_premise])].line;
        const auto& negside = proof.lines[static_cast<size_t>(app.prem[1 - app.pos_premise])].line;
        for (const auto& l : app.w1)
          if (!pos.has_singleton(l)) return fail(id, "cut positive premise missing literal");
        auto nt = make_term([&] {
          std::vector<Literal> v;
          for (const auto& l : app.w1) v.push_back(l.negated());
          return v;
        }());
        if (!nt) return fail(id, "witness mismatch");
        if (!negside.has_term(*nt)) return fail(id, "cut negative premise missing term");
        if (conclude_cut(pos, negside, app.w1) != pl.line)
          return fail(id, "cut conclusion mismatch");
        break;
      }
      case Rule::WeakenAdd: {
        const auto& p = proof.lines[static_cast<size_t>(app.prem[0])].line;
        if (app.w1.empty()) return fail(id, "witness mismatch");
        std::vector<Literal> ws = app.w1;
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        if (ws.size() > static_cast<size_t>(proof.d)) return fail(id, "width breach");
        if (conclude_weaken_add(p, app.w1) != pl.line)
          return fail(id, "weaken-add conclusion mismatch");
        break;
      }
      case Rule::WeakenDrop: {
        if (proof.d == 1) return fail(id, "weaken-drop disabled in Res(1)");
        const auto& p = proof.lines[static_cast<size_t>(app.prem[0])].line;
        if (app.w1.empty() || app.w2.empty()) return fail(id, "witness mismatch");
        std::vector<Literal> whole = app.w1;
        whole.insert(whole.end(), app.w2.begin(), app.w2.end());
        auto full = make_term(std::move(whole));
        if (!full) return fail(id, "witness mismatch");
        if (!p.has_term(*full)) return fail(id, "witness mismatch");
        if (conclude_weaken_drop(p, app.w1, app.w2) != pl.line)
          return fail(id, "weaken-drop conclusion mismatch");
        break;
      }
    }
    if (!is_leaf_rule(app.rule)) {
      ++rep.size;
      ++rep.rule_counts[app.rule];
    } else {
      ++rep.rule_counts[app.rule];
    }
  }

  if (!proof.lines.back().line.empty()) {
    return fail(static_cast<int>(proof.lines.size()) - 1, "non-empty final line");
  }
  if (proof.tree_like && !verify_tree_like(proof)) {
    return fail(-1, "tree-like reuse");
  }
  rep.valid = true;
  rep.distinct_param_axioms = params_used.size();
  return rep;
}

bool verify_tree_like(const Refutation& proof) {
  std::vector<int> uses(proof.lines.size(), 0);
  for (const auto& pl : proof.lines) {
    int np = rule_premises(pl.app.rule);
    for (int p = 0; p < np; ++p) {
      int q = pl.app.prem[static_cast<size_t>(p)];
      if (q >= 0 && q < static_cast<int>(uses.size())) ++uses[static_cast<size_t>(q)];
    }
  }
  for (size_t i = 0; i < proof.lines.size(); ++i) {
    if (is_leaf_rule(proof.lines[i].app.rule)) continue;
    if (uses[i] > 1) return false;
  }
  return true;
}

size_t count_param_axioms(const CnfInstance& instance, const Refutation& proof) {
  auto rep = check(instance, proof);
  if (!rep.valid) throw std::invalid_argument("count_param_axioms on unchecked/invalid proof: " + rep.reason);
  return rep.distinct_param_axioms;
}

Refutation mutate(const Refutation& proof, uint64_t seed) {
  Rng rng(seed);
  Refutation out = proof;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    size_t id = static_cast<size_t>(rng.below(out.lines.size()));
    auto& pl = out.lines[id];
    int kind = rng.range(0, 2);
    if (kind == 0) {
      // flip one literal polarity inside the stored line
      if (pl.line.terms.empty()) continue;
      auto& t = pl.line.terms[static_cast<size_t>(rng.below(pl.line.terms.size()))];
      auto& l = t.lits[static_cast<size_t>(rng.below(t.lits.size()))];
      l.pos = !l.pos;
      pl.line = normalize(pl.line);
      return out;
    } else if (kind == 1) {
      // delete one witness element
      auto& app = pl.app;
      if (!app.w1.empty() && (app.w2.empty() || rng.coin())) {
        if (app.rule == Rule::Cut || app.rule == Rule::AndIntro || app.rule == Rule::WeakenAdd ||
            app.rule == Rule::WeakenDrop) {
          app.w1.erase(app.w1.begin() + static_cast<long>(rng.below(app.w1.size())));
          return out;
        }
      } else if (!app.w2.empty()) {
        app.w2.erase(app.w2.begin() + static_cast<long>(rng.below(app.w2.size())));
        return out;
      }
      continue;
    } else {
      // rewire one premise to a different earlier line
      auto& app = pl.app;
      int np = rule_premises(app.rule);
      if (np == 0 || id == 0) continue;
      int slot = np == 1 ? 0 : rng.range(0, 1);
      int old = app.prem[static_cast<size_t>(slot)];
      int candidate = static_cast<int>(rng.below(id));
      if (candidate == old) continue;
      if (out.lines[static_cast<size_t>(candidate)].line == out.lines[static_cast<size_t>(old)].line)
        continue;  // same content would be a semantic no-op
      app.prem[static_cast<size_t>(slot)] = candidate;
      return out;
    }
  }
  throw std::runtime_error("could not build a mutation");
}

}  // namespace resd
