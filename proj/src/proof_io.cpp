#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "resd/proof.hpp"

namespace resd {

using json = nlohmann::ordered_json;

namespace {

json lits_to_json(const std::vector<Literal>& lits, const VariableAtlas& atlas) {
  json arr = json::array();
  for (const auto& l : lits) {
    int v = atlas.encode(l.atom);
    arr.push_back(l.pos ? v : -v);
  }
  return arr;
}

std::vector<Literal> lits_from_json(const json& arr, const VariableAtlas& atlas) {
  std::vector<Literal> out;
  for (const auto& v : arr) {
    int x = v.get<int>();
    out.push_back(Literal{atlas.decode(std::abs(x)), x > 0});
  }
  return out;
}

}  // namespace

std::string proof_to_jsonl(const Refutation& proof, const VariableAtlas& atlas) {
  std::ostringstream os;
  json header;
  header["format"] = "resd-proof";
  header["d"] = proof.d;
  header["tree"] = proof.tree_like;
  if (proof.param_k)
    header["k"] = *proof.param_k;
  else
    header["k"] = nullptr;
  header["instance"] = proof.instance_name;
  os << header.dump() << "\n";
  for (size_t id = 0; id < proof.lines.size(); ++id) {
    const auto& pl = proof.lines[id];
    json jl;
    jl["id"] = id;
    jl["rule"] = rule_name(pl.app.rule);
    json prem = json::array();
    for (int p = 0; p < rule_premises(pl.app.rule); ++p) prem.push_back(pl.app.prem[static_cast<size_t>(p)]);
    jl["prem"] = std::move(prem);
    json terms = json::array();
    for (const auto& t : pl.line.terms) terms.push_back(lits_to_json(t.lits, atlas));
    jl["terms"] = std::move(terms);
    json w;
    w["w1"] = lits_to_json(pl.app.w1, atlas);
    w["w2"] = lits_to_json(pl.app.w2, atlas);
    w["pos"] = pl.app.pos_premise;
    jl["witness"] = std::move(w);
    os << jl.dump() << "\n";
  }
  return os.str();
}

Refutation proof_from_jsonl(const std::string& text, const VariableAtlas& atlas) {
  std::istringstream is(text);
  std::string lineText;
  if (!std::getline(is, lineText)) throw std::invalid_argument("empty proof file");
  json header = json::parse(lineText);
  if (header.value("format", "") != "resd-proof") throw std::invalid_argument("not a resd proof file");
  Refutation proof;
  proof.d = header["d"].get<int>();
  proof.tree_like = header["tree"].get<bool>();
  if (!header["k"].is_null()) proof.param_k = header["k"].get<int>();
  proof.instance_name = header.value("instance", "");
  while (std::getline(is, lineText)) {
    if (lineText.empty()) continue;
    json jl = json::parse(lineText);
    ProofLine pl;
    if (!rule_from_name(jl["rule"].get<std::string>(), pl.app.rule))
      throw std::invalid_argument("unknown rule in proof file");
    auto prem = jl["prem"];
    for (size_t p = 0; p < prem.size() && p < 2; ++p) pl.app.prem[p] = prem[p].get<int>();
    for (const auto& t : jl["terms"]) {
      auto lits = lits_from_json(t, atlas);
      auto term = make_term(std::move(lits));
      if (term) pl.line.terms.push_back(std::move(*term));
    }
    pl.line = normalize(pl.line);
    const auto& w = jl["witness"];
    pl.app.w1 = lits_from_json(w["w1"], atlas);
    pl.app.w2 = lits_from_json(w["w2"], atlas);
    pl.app.pos_premise = w["pos"].get<int>();
    proof.lines.push_back(std::move(pl));
  }
  return proof;
}

}  // namespace resd
