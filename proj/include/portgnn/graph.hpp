#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"

namespace portgnn {

// Unordered edge {u, v}, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple undirected graph with nodes 1..n. Adjacency lists are sorted and the
// edge list is canonical: {u, v} with u < v, ordered lexicographically.
// Immutable after construction, safe to share across threads.
class Graph {
 public:
  Graph() = default;

  Graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
    if (n < 0) throw InvalidParams("node count must be non-negative");
    n_ = n;
    adj_.assign(static_cast<std::size_t>(n), {});
    edges_.reserve(edge_list.size());
    for (const auto& [a, b] : edge_list) {
      if (a < 1 || a > n) throw InvalidNode("edge endpoint " + std::to_string(a) + " outside 1.." + std::to_string(n));
      if (b < 1 || b > n) throw InvalidNode("edge endpoint " + std::to_string(b) + " outside 1.." + std::to_string(n));
      if (a == b) throw InvalidEdge("self-loop at node " + std::to_string(a));
      edges_.push_back(make_edge(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw DuplicateEdge("duplicate edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");
    for (const Edge& e : edges_) {
      adj_[static_cast<std::size_t>(e.u) - 1].push_back(e.v);
      adj_[static_cast<std::size_t>(e.v) - 1].push_back(e.u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  const std::vector<int>& neighbors(int v) const {
    check_node(v);
    return adj_[static_cast<std::size_t>(v) - 1];
  }

  bool has_edge(int u, int v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_ || u == v) return false;
    const auto& nb = adj_[static_cast<std::size_t>(u) - 1];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }

  int min_degree() const {
    if (n_ == 0) return 0;
    int d = static_cast<int>(adj_[0].size());
    for (const auto& nb : adj_) d = std::min(d, static_cast<int>(nb.size()));
    return d;
  }

  void check_node(int v) const {
    if (v < 1 || v > n_)
      throw InvalidNode("node " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
  return Graph(n, edge_list);
}

}  // namespace portgnn
