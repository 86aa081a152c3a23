#include "resd/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace resd {

using json = nlohmann::ordered_json;

const char* family_name(Family f) {
  switch (f) {
    case Family::LNP: return "lnp";
    case Family::DRLNP: return "drlnp";
    case Family::DRLNPGraph: return "drlnp-graph";
    case Family::IP: return "ip";
    case Family::DRIP: return "drip";
    case Family::DRVIP: return "drvip";
    case Family::SigmaPST: return "sigma-pst";
    case Family::PHP: return "php";
    case Family::SigmaPrime: return "sigma-prime";
  }
  return "?";
}

bool family_from_name(const std::string& s, Family& out) {
  static const std::pair<const char*, Family> table[] = {
      {"lnp", Family::LNP},           {"drlnp", Family::DRLNP},
      {"drlnp-graph", Family::DRLNPGraph}, {"ip", Family::IP},
      {"drip", Family::DRIP},         {"drvip", Family::DRVIP},
      {"sigma-pst", Family::SigmaPST}, {"php", Family::PHP},
      {"sigma-prime", Family::SigmaPrime}};
  for (auto& [name, f] : table) {
    if (s == name) {
      out = f;
      return true;
    }
  }
  return false;
}

void FamilySpec::validate() const {
  if (n < 2) throw std::invalid_argument("family requires n >= 2");
  switch (family) {
    case Family::DRLNP:
    case Family::DRIP:
    case Family::DRVIP:
      if (d < 1) throw std::invalid_argument("relativized family requires d >= 1");
      break;
    case Family::DRLNPGraph:
      if (d < 1) throw std::invalid_argument("relativized family requires d >= 1");
      if (graph.n() != n) throw std::invalid_argument("graph on [n] required");
      break;
    case Family::PHP:
      if (k < 1) throw std::invalid_argument("php requires k >= 1");
      if (n < k + 1) throw std::invalid_argument("php requires n >= k+1");
      break;
    case Family::SigmaPrime:
      if (k < 1) throw std::invalid_argument("sigma-prime requires k >= 1");
      if (!base_family) throw std::invalid_argument("sigma-prime requires a base family");
      break;
    default: break;
  }
}

std::string FamilySpec::str() const {
  std::ostringstream os;
  os << family_name(family) << " n=" << n;
  if (d > 0) os << " d=" << d;
  if (k > 0) os << " k=" << k;
  return os.str();
}

bool CnfInstance::clause_only() const {
  for (const auto& l : lines)
    if (!l.is_clause()) return false;
  return true;
}

namespace {

std::string tag(const char* schema, std::initializer_list<int> ix) {
  std::ostringstream os;
  os << schema;
  bool first = true;
  for (int v : ix) {
    os << (first ? " " : ",") << v;
    first = false;
  }
  return os.str();
}

struct Builder {
  CnfInstance inst;

  void add(DnfLine line, std::string t) {
    inst.lines.push_back(std::move(line));
    inst.tags.push_back(std::move(t));
  }
  void add_clause(std::vector<Literal> lits, std::string t) {
    add(clause_of(std::move(lits)), std::move(t));
  }
};

// ~R_i expanded over all planes p in [d]
void push_not_R(std::vector<Literal>& lits, int d, int i) {
  for (int p = 1; p <= d; ++p) lits.push_back(neg(atom(Kind::R, p, i)));
}

void gen_lnp(Builder& b, int n) {
  for (int i = 1; i <= n; ++i) b.add_clause({neg(atom(Kind::L, i, i))}, tag("irrefl", {i}));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l)
        b.add_clause({neg(atom(Kind::L, i, j)), neg(atom(Kind::L, j, l)), lit(atom(Kind::L, i, l))},
                     tag("trans", {i, j, l}));
  for (int j = 1; j <= n; ++j) {
    std::vector<Literal> lits;
    for (int i = 1; i <= n; ++i) lits.push_back(lit(atom(Kind::S2, i, j)));
    b.add_clause(std::move(lits), tag("total", {j}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      b.add_clause({neg(atom(Kind::S2, i, j)), lit(atom(Kind::L, i, j))}, tag("wit-ord", {i, j}));
}

void gen_drlnp(Builder& b, int d, int n) {
  for (int i = 1; i <= n; ++i) {
    std::vector<Literal> lits;
    push_not_R(lits, d, i);
    lits.push_back(neg(atom(Kind::L, i, i)));
    b.add_clause(std::move(lits), tag("irrefl", {i}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l) {
        std::vector<Literal> lits;
        push_not_R(lits, d, i);
        push_not_R(lits, d, j);
        push_not_R(lits, d, l);
        lits.push_back(neg(atom(Kind::L, i, j)));
        lits.push_back(neg(atom(Kind::L, j, l)));
        lits.push_back(lit(atom(Kind::L, i, l)));
        b.add_clause(std::move(lits), tag("trans", {i, j, l}));
      }
  for (int j = 1; j <= n; ++j) {
    std::vector<Literal> lits;
    for (int i = 1; i <= n; ++i) lits.push_back(lit(atom(Kind::S2, i, j)));
    b.add_clause(std::move(lits), tag("total", {j}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int p = 1; p <= d; ++p) {
        std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
        push_not_R(lits, d, j);
        lits.push_back(lit(atom(Kind::R, p, i)));
        b.add_clause(std::move(lits), tag("wit-rel", {i, j, p}));
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
      push_not_R(lits, d, j);
      lits.push_back(lit(atom(Kind::L, i, j)));
      b.add_clause(std::move(lits), tag("wit-ord", {i, j}));
    }
  for (int p = 1; p <= d; ++p) b.add_clause({lit(atom(Kind::R, p, n))}, tag("top-rel", {p}));
}

void gen_ip(Builder& b, int n) {
  b.add_clause({lit(atom(Kind::P1, 1))}, tag("base", {}));
  b.add_clause({neg(atom(Kind::P1, n))}, tag("top", {}));
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<Literal> lits;
    for (int j = i + 1; j <= n; ++j) lits.push_back(lit(atom(Kind::S2, i, j)));
    b.add_clause(std::move(lits), tag("total", {i}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      b.add_clause({neg(atom(Kind::S2, i, j)), neg(atom(Kind::P1, i)), lit(atom(Kind::P1, j))},
                   tag("step", {i, j}));
}

void gen_drip(Builder& b, int d, int n) {
  b.add_clause({lit(atom(Kind::P1, 1))}, tag("base", {}));
  b.add_clause({neg(atom(Kind::P1, n))}, tag("top", {}));
  for (int p = 1; p <= d; ++p) {
    b.add_clause({lit(atom(Kind::R, p, 1))}, tag("base-rel", {p}));
    b.add_clause({lit(atom(Kind::R, p, n))}, tag("top-rel", {p}));
  }
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<Literal> lits;
    for (int j = i + 1; j <= n; ++j) lits.push_back(lit(atom(Kind::S2, i, j)));
    b.add_clause(std::move(lits), tag("total", {i}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int p = 1; p <= d; ++p) {
        std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
        push_not_R(lits, d, i);
        lits.push_back(lit(atom(Kind::R, p, j)));
        b.add_clause(std::move(lits), tag("step-rel", {i, j, p}));
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<Literal> lits{neg(atom(Kind::S2, i, j))};
      push_not_R(lits, d, i);
      lits.push_back(neg(atom(Kind::P1, i)));
      lits.push_back(lit(atom(Kind::P1, j)));
      b.add_clause(std::move(lits), tag("step", {i, j}));
    }
}

void gen_drvip(Builder& b, int d, int n) {
  for (int p = 1; p <= d; ++p) {
    b.add_clause({lit(atom(Kind::R, p, 1))}, tag("base-rel", {p}));
    b.add_clause({lit(atom(Kind::R, p, n))}, tag("top-rel", {p}));
  }
  b.add_clause({lit(atom(Kind::P2, 1, 1))}, tag("base", {}));
  for (int j = 1; j <= n; ++j) b.add_clause({neg(atom(Kind::P2, n, j))}, tag("top", {j}));
  // Skolem totality; i = n would instantiate to the empty clause, so the
  // range stops at n-1.
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<Literal> lits;
      for (int l = i + 1; l <= n; ++l)
        for (int m = 1; m <= n; ++m) lits.push_back(lit(atom(Kind::S4, i, j, l, m)));
      b.add_clause(std::move(lits), tag("total", {i, j}));
    }
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l)
        for (int m = 1; m <= n; ++m) {
          for (int r = 1; r <= d; ++r) {
            std::vector<Literal> lits{neg(atom(Kind::S4, i, j, l, m))};
            push_not_R(lits, d, i);
            lits.push_back(neg(atom(Kind::P2, i, j)));
            lits.push_back(lit(atom(Kind::R, r, l)));
            b.add_clause(std::move(lits), tag("step-rel", {i, j, l, m, r}));
          }
          std::vector<Literal> lits{neg(atom(Kind::S4, i, j, l, m))};
          push_not_R(lits, d, i);
          lits.push_back(neg(atom(Kind::P2, i, j)));
          lits.push_back(lit(atom(Kind::P2, l, m)));
          b.add_clause(std::move(lits), tag("step", {i, j, l, m}));
        }
}

void gen_sigma_pst(Builder& b, int n) {
  for (int i = 1; i <= n; ++i) {
    std::vector<std::optional<Term>> terms;
    terms.push_back(make_term({lit(atom(Kind::P1, i))}));
    for (int j = 1; j <= n; ++j)
      terms.push_back(make_term({neg(atom(Kind::S2, i, j)), lit(atom(Kind::T, i, j))}));
    b.add(line_from_terms(std::move(terms)), tag("choice", {i}));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      b.add_clause({neg(atom(Kind::T, i, j)), lit(atom(Kind::S2, i, j))}, tag("t-imp-s", {i, j}));
}

void gen_php(Builder& b, int n, int k) {
  // hole clauses over unordered pigeon pairs
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= k + 1; ++i)
      for (int l = i + 1; l <= k + 1; ++l)
        b.add_clause({neg(atom(Kind::P2, i, j)), neg(atom(Kind::P2, l, j))}, tag("hole", {i, l, j}));
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= n; ++i)
      for (int l = i + 1; l <= n; ++l)
        b.add_clause({neg(atom(Kind::Q, i, j)), neg(atom(Kind::Q, l, j))}, tag("qhole", {i, l, j}));
  // totality for every pigeon in [k+1] (the printed [k] leaves the
  // instance satisfiable)
  for (int i = 1; i <= k + 1; ++i) {
    std::vector<Literal> lits;
    for (int j = 1; j <= n; ++j) lits.push_back(lit(atom(Kind::P2, i, j)));
    b.add_clause(std::move(lits), tag("ptotal", {i}));
  }
  for (int i = 1; i <= k + 1; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<Literal> lits{neg(atom(Kind::P2, i, j))};
      for (int l = 1; l <= k; ++l) lits.push_back(lit(atom(Kind::Q, j, l)));
      b.add_clause(std::move(lits), tag("qtotal", {i, j}));
    }
}

VariableAtlas atlas_for(const FamilySpec& s) {
  std::vector<KindRange> r;
  switch (s.family) {
    case Family::LNP:
      r = {{Kind::L, {s.n, s.n}}, {Kind::S2, {s.n, s.n}}};
      break;
    case Family::DRLNP:
    case Family::DRLNPGraph:
      r = {{Kind::L, {s.n, s.n}}, {Kind::S2, {s.n, s.n}}, {Kind::R, {s.d, s.n}}};
      break;
    case Family::IP:
      r = {{Kind::P1, {s.n}}, {Kind::S2, {s.n}, true}};
      break;
    case Family::DRIP:
      r = {{Kind::P1, {s.n}}, {Kind::R, {s.d, s.n}}, {Kind::S2, {s.n}, true}};
      break;
    case Family::DRVIP:
      r = {{Kind::R, {s.d, s.n}}, {Kind::P2, {s.n, s.n}}, {Kind::S4, {s.n - 1, s.n, s.n, s.n}}};
      break;
    case Family::SigmaPST:
      r = {{Kind::P1, {s.n}}, {Kind::S2, {s.n, s.n}}, {Kind::T, {s.n, s.n}}};
      break;
    case Family::PHP:
      r = {{Kind::P2, {s.k + 1, s.n}}, {Kind::Q, {s.n, s.k}}};
      break;
    case Family::SigmaPrime:
      throw std::invalid_argument("sigma-prime atlas derives from its base");
  }
  return VariableAtlas(std::move(r));
}

void dedupe_lines(CnfInstance& inst) {
  std::vector<DnfLine> lines;
  std::vector<std::string> tags;
  std::set<DnfLine> seen;
  for (size_t i = 0; i < inst.lines.size(); ++i) {
    const auto& l = inst.lines[i];
    // a clause holding complementary singleton terms is a tautology
    bool taut = false;
    for (const auto& t : l.terms)
      if (t.width() == 1 && l.has_singleton(t.lits[0].negated())) taut = true;
    if (taut) continue;
    if (!seen.insert(l).second) continue;
    lines.push_back(l);
    tags.push_back(inst.tags[i]);
  }
  inst.lines = std::move(lines);
  inst.tags = std::move(tags);
}

}  // namespace

CnfInstance generate(const FamilySpec& spec) {
  spec.validate();
  if (spec.family == Family::SigmaPrime) {
    FamilySpec base_spec;
    base_spec.family = *spec.base_family;
    base_spec.n = spec.base_n > 0 ? spec.base_n : spec.n;
    base_spec.d = spec.base_d;
    base_spec.dedupe = spec.dedupe;
    return sigma_prime(generate(base_spec), spec.k);
  }
  Builder b;
  b.inst.spec = spec;
  b.inst.atlas = atlas_for(spec);
  switch (spec.family) {
    case Family::LNP: gen_lnp(b, spec.n); break;
    case Family::DRLNP: gen_drlnp(b, spec.d, spec.n); break;
    case Family::DRLNPGraph: {
      gen_drlnp(b, spec.d, spec.n);
      b.inst = restrict_to_graph(b.inst, spec.graph);
      b.inst.spec = spec;
      break;
    }
    case Family::IP: gen_ip(b, spec.n); break;
    case Family::DRIP: gen_drip(b, spec.d, spec.n); break;
    case Family::DRVIP: gen_drvip(b, spec.d, spec.n); break;
    case Family::SigmaPST: gen_sigma_pst(b, spec.n); break;
    case Family::PHP: gen_php(b, spec.n, spec.k); break;
    case Family::SigmaPrime: break;  // handled above
  }
  if (spec.dedupe) dedupe_lines(b.inst);
  return b.inst;
}

DnfLine parameterized_axiom(const std::vector<Atom>& vars) {
  std::set<Atom> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) throw std::invalid_argument("parameterized axiom atoms must be distinct");
  if (vars.empty()) throw std::invalid_argument("parameterized axiom needs at least one atom");
  std::vector<Literal> lits;
  for (const auto& a : vars) lits.push_back(neg(a));
  return clause_of(std::move(lits));
}

bool is_parameterized_axiom(const DnfLine& line, int k) {
  if (static_cast<int>(line.terms.size()) != k + 1) return false;
  std::set<Atom> atoms;
  for (const auto& t : line.terms) {
    if (t.width() != 1 || t.lits[0].pos) return false;
    atoms.insert(t.lits[0].atom);
  }
  return static_cast<int>(atoms.size()) == k + 1;
}

CnfInstance sigma_prime(const CnfInstance& base, int k) {
  if (!base.clause_only()) throw std::invalid_argument("sigma-prime base must be clause-only");
  CnfInstance out;
  out.spec = base.spec;
  out.spec.family = Family::SigmaPrime;
  out.spec.base_family = base.spec.family;
  out.spec.base_n = base.spec.n;
  out.spec.base_d = base.spec.d;
  out.spec.k = k;
  auto ranges = base.atlas.ranges();
  ranges.push_back({Kind::A, {}});
  ranges.push_back({Kind::B, {k + 1}});
  ranges.push_back({Kind::Bp, {k + 1}});
  out.atlas = VariableAtlas(std::move(ranges));
  for (size_t i = 0; i < base.lines.size(); ++i) {
    DnfLine l = base.lines[i];
    l.terms.push_back(Term{{lit(atom(Kind::A))}});
    out.lines.push_back(normalize(l));
    out.tags.push_back("guard " + base.tags[i]);
  }
  for (int i = 1; i <= k + 1; ++i) {
    out.lines.push_back(
        clause_of({neg(atom(Kind::A)), lit(atom(Kind::B, i)), lit(atom(Kind::Bp, i))}));
    out.tags.push_back(tag("pair", {i}));
  }
  return out;
}

CnfInstance restrict_to_graph(const CnfInstance& instance, const Graph& g) {
  if (g.n() != instance.spec.n) throw std::invalid_argument("graph universe mismatch");
  Assignment off;
  int n = instance.spec.n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!g.has_edge(i, j)) off.set(atom(Kind::S2, i, j), false);
  CnfInstance out;
  out.spec = instance.spec;
  out.spec.graph = g;
  out.atlas = instance.atlas;
  for (size_t i = 0; i < instance.lines.size(); ++i) {
    auto r = restrict_line(instance.lines[i], off);
    if (r.satisfied) continue;
    out.lines.push_back(std::move(r.line));
    out.tags.push_back(instance.tags[i]);
  }
  return out;
}

std::string to_dimacs(const CnfInstance& inst) {
  if (!inst.clause_only()) throw std::invalid_argument("dimacs export needs a clause-only instance");
  std::ostringstream os;
  os << "c resd " << inst.spec.str() << "\n";
  os << inst.atlas.manifest();
  os << "p cnf " << inst.atlas.size() << " " << inst.lines.size() << "\n";
  for (size_t i = 0; i < inst.lines.size(); ++i) {
    os << "c tag " << inst.tags[i] << "\n";
    for (const auto& t : inst.lines[i].terms) {
      int v = inst.atlas.encode(t.lits[0].atom);
      os << (t.lits[0].pos ? v : -v) << " ";
    }
    os << "0\n";
  }
  return os.str();
}

namespace {

json line_to_json(const DnfLine& line, const VariableAtlas& atlas) {
  json terms = json::array();
  for (const auto& t : line.terms) {
    json term = json::array();
    for (const auto& l : t.lits) {
      int v = atlas.encode(l.atom);
      term.push_back(l.pos ? v : -v);
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

DnfLine line_from_json(const json& terms, const VariableAtlas& atlas) {
  DnfLine l;
  for (const auto& term : terms) {
    std::vector<Literal> lits;
    for (const auto& v : term) {
      int x = v.get<int>();
      lits.push_back(Literal{atlas.decode(std::abs(x)), x > 0});
    }
    auto t = make_term(std::move(lits));
    if (t) l.terms.push_back(std::move(*t));
  }
  return normalize(l);
}

json atlas_to_json(const VariableAtlas& atlas) {
  json ranges = json::array();
  for (const auto& r : atlas.ranges()) {
    json jr;
    jr["kind"] = kind_name(r.kind);
    jr["dims"] = r.dims;
    jr["triangular"] = r.triangular;
    ranges.push_back(std::move(jr));
  }
  return ranges;
}

VariableAtlas atlas_from_json(const json& ranges) {
  std::vector<KindRange> rs;
  for (const auto& jr : ranges) {
    KindRange r;
    if (!kind_from_name(jr["kind"].get<std::string>(), r.kind))
      throw std::invalid_argument("unknown kind in atlas json");
    r.dims = jr["dims"].get<std::vector<int>>();
    r.triangular = jr["triangular"].get<bool>();
    rs.push_back(std::move(r));
  }
  return VariableAtlas(std::move(rs));
}

}  // namespace

std::string to_jsonl(const CnfInstance& inst) {
  std::ostringstream os;
  json header;
  header["format"] = "resd-instance";
  header["family"] = family_name(inst.spec.family);
  header["n"] = inst.spec.n;
  header["d"] = inst.spec.d;
  header["k"] = inst.spec.k;
  header["atlas"] = atlas_to_json(inst.atlas);
  os << header.dump() << "\n";
  for (size_t i = 0; i < inst.lines.size(); ++i) {
    json jl;
    jl["id"] = i;
    jl["tag"] = inst.tags[i];
    jl["terms"] = line_to_json(inst.lines[i], inst.atlas);
    os << jl.dump() << "\n";
  }
  return os.str();
}

CnfInstance instance_from_jsonl(const std::string& text) {
  std::istringstream is(text);
  std::string lineText;
  if (!std::getline(is, lineText)) throw std::invalid_argument("empty instance file");
  json header = json::parse(lineText);
  if (header.value("format", "") != "resd-instance")
    throw std::invalid_argument("not a resd instance file");
  CnfInstance inst;
  Family f;
  if (!family_from_name(header["family"].get<std::string>(), f))
    throw std::invalid_argument("unknown family in instance file");
  inst.spec.family = f;
  inst.spec.n = header["n"].get<int>();
  inst.spec.d = header["d"].get<int>();
  inst.spec.k = header["k"].get<int>();
  inst.atlas = atlas_from_json(header["atlas"]);
  while (std::getline(is, lineText)) {
    if (lineText.empty()) continue;
    json jl = json::parse(lineText);
    inst.lines.push_back(line_from_json(jl["terms"], inst.atlas));
    inst.tags.push_back(jl.value("tag", ""));
  }
  return inst;
}

}  // namespace resd
