#include "resd/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "resd/rng.hpp"

namespace resd {

void Graph::add_edge(int u, int v) {
  if (u == v) return;
  if (u < 1 || v < 1 || u > n_ || v > n_) throw std::out_of_range("edge endpoint outside [1..n]");
  if (has_edge(u, v)) return;
  adj_[static_cast<size_t>(u)].push_back(v);
  adj_[static_cast<size_t>(v)].push_back(u);
  std::sort(adj_[static_cast<size_t>(u)].begin(), adj_[static_cast<size_t>(u)].end());
  std::sort(adj_[static_cast<size_t>(v)].begin(), adj_[static_cast<size_t>(v)].end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 1 || v < 1 || u > n_ || v > n_ || u == v) return false;
  const auto& a = adj_[static_cast<size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::min_degree() const {
  int d = n_;
  for (int v = 1; v <= n_; ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 1; v <= n_; ++v) d = std::max(d, degree(v));
  return d;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int u = 1; u < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph Graph::erdos_renyi(int n, double avg_deg, uint64_t seed) {
  Graph g(n);
  if (n < 2) return g;
  double p = avg_deg / static_cast<double>(n - 1);
  if (p > 1.0) p = 1.0;
  Rng rng(seed);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.unit() < p) g.add_edge(u, v);
  return g;
}

Graph Graph::parse_edge_list(const std::string& text, int n) {
  Graph g(n);
  std::istringstream is(text);
  int u, v;
  while (is >> u >> v) g.add_edge(u, v);
  return g;
}

}  // namespace resd
