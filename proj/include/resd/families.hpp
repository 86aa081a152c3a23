#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resd/atlas.hpp"
#include "resd/graph.hpp"
#include "resd/logic.hpp"

namespace resd {

enum class Family { LNP, DRLNP, DRLNPGraph, IP, DRIP, DRVIP, SigmaPST, PHP, SigmaPrime };

const char* family_name(Family f);
bool family_from_name(const std::string& s, Family& out);

struct FamilySpec {
  Family family = Family::LNP;
  int n = 0;       // universe size
  int d = 0;       // relativization depth, >= 1 where it applies
  int k = 0;       // weight parameter (PHP / SigmaPrime)
  Graph graph;     // only DRLNPGraph
  bool dedupe = false;  // drop tautological and duplicate lines

  // SigmaPrime wraps a base family.
  std::optional<Family> base_family;
  int base_n = 0, base_d = 0;

  void validate() const;  // throws std::invalid_argument
  std::string str() const;
};

struct CnfInstance {
  FamilySpec spec;
  VariableAtlas atlas;
  std::vector<DnfLine> lines;
  std::vector<std::string> tags;  // schema tag per line

  bool clause_only() const;
  size_t atom_count() const { return static_cast<size_t>(atlas.size()); }
};

CnfInstance generate(const FamilySpec& spec);

// The clause ~x_1 v ... v ~x_{k+1} over k+1 distinct atoms.
DnfLine parameterized_axiom(const std::vector<Atom>& vars);
bool is_parameterized_axiom(const DnfLine& line, int k);

// Weight gadget: every base clause C becomes A v C, plus ~A v B_i v B'_i.
CnfInstance sigma_prime(const CnfInstance& base, int k);

// Forbids Skolem witnesses outside graph edges (S_{i,j} := false off-edge).
CnfInstance restrict_to_graph(const CnfInstance& instance, const Graph& g);

std::string to_dimacs(const CnfInstance& inst);
std::string to_jsonl(const CnfInstance& inst);
CnfInstance instance_from_jsonl(const std::string& text);

}  // namespace resd
