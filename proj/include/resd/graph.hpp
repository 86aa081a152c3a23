#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace resd {

// Undirected simple graph on [1..n].
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n) + 1) {}

  int n() const { return n_; }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbours(int v) const { return adj_[static_cast<size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  int min_degree() const;
  int max_degree() const;
  bool empty() const { return n_ == 0; }

  static Graph complete(int n);
  static Graph path(int n);
  // Erdos-Renyi style helper with expected average degree avg_deg.
  // No expansion or width guarantee.
  static Graph erdos_renyi(int n, double avg_deg, uint64_t seed);
  static Graph parse_edge_list(const std::string& text, int n);

private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
};

}  // namespace resd
