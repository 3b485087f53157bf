#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/rng.hpp"

namespace portgnn {

// Port (v, i): the i-th connection point of node v, 1 <= i <= deg(v).
struct Port {
  int node = 0;
  int index = 0;
  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

// Involutive port numbering. forward(v, i) is the port on the far end of the
// edge assigned to (v, i); because the mapping is an involution it is also
// the port that sends into (v, i). Construction validates totality over all
// ports, the involution law, and that every edge is realized exactly once.
class PortNumbering {
 public:
  PortNumbering() = default;

  // `pairs` lists each edge's two ports once: forward(first) == second.
  static PortNumbering build(const Graph& g, const std::vector<std::pair<Port, Port>>& pairs) {
    PortNumbering p;
    const int n = g.num_nodes();
    p.table_.assign(static_cast<std::size_t>(n), {});
    for (int v = 1; v <= n; ++v)
      p.table_[static_cast<std::size_t>(v) - 1].assign(static_cast<std::size_t>(g.degree(v)), Port{});
    std::vector<char> edge_seen(static_cast<std::size_t>(g.num_edges()), 0);
    auto slot = [&](const Port& q) -> Port& {
      g.check_node(q.node);
      auto& row = p.table_[static_cast<std::size_t>(q.node) - 1];
      if (q.index < 1 || q.index > static_cast<int>(row.size()))
        throw InvalidParams("port index " + std::to_string(q.index) + " outside 1..deg(" +
                            std::to_string(q.node) + ")");
      return row[static_cast<std::size_t>(q.index) - 1];
    };
    for (const auto& [a, b] : pairs) {
      if (!g.has_edge(a.node, b.node))
        throw InvalidParams("port pair does not realize an edge: {" + std::to_string(a.node) + "," +
                            std::to_string(b.node) + "}");
      Port& sa = slot(a);
      Port& sb = slot(b);
      if (sa.node != 0 || sb.node != 0) throw InvalidParams("port assigned twice");
      sa = b;
      sb = a;
      const Edge e = make_edge(a.node, b.node);
      const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
      const auto ei = static_cast<std::size_t>(it - g.edges().begin());
      if (edge_seen[ei]) throw InvalidParams("edge realized twice");
      edge_seen[ei] = 1;
    }
    for (const auto& row : p.table_)
      for (const Port& q : row)
        if (q.node == 0) throw InvalidParams("port numbering not total");
    for (char s : edge_seen)
      if (!s) throw InvalidParams("port numbering misses an edge");
    return p;
  }

  Port forward(int v, int i) const {
    const auto& row = table_.at(static_cast<std::size_t>(v) - 1);
    return row.at(static_cast<std::size_t>(i) - 1);
  }

  int num_nodes() const { return static_cast<int>(table_.size()); }
  int degree_of(int v) const { return static_cast<int>(table_.at(static_cast<std::size_t>(v) - 1).size()); }
  const std::vector<std::vector<Port>>& table() const { return table_; }

  friend bool operator==(const PortNumbering&, const PortNumbering&) = default;

 private:
  std::vector<std::vector<Port>> table_;  // table_[v-1][i-1]
};

// Scan edges in the given order; each endpoint takes its next free port.
inline PortNumbering consistent_port_numbering(const Graph& g, const std::vector<Edge>& edge_order) {
  std::vector<int> counter(static_cast<std::size_t>(g.num_nodes()), 0);
  std::vector<std::pair<Port, Port>> pairs;
  pairs.reserve(edge_order.size());
  for (const Edge& e : edge_order) {
    const int i = ++counter[static_cast<std::size_t>(e.u) - 1];
    const int j = ++counter[static_cast<std::size_t>(e.v) - 1];
    pairs.push_back({Port{e.u, i}, Port{e.v, j}});
  }
  return PortNumbering::build(g, pairs);
}

// Canonical numbering: scan edges in the graph's canonical order.
inline PortNumbering consistent_port_numbering(const Graph& g) {
  return consistent_port_numbering(g, g.edges());
}

inline PortNumbering shuffled_port_numbering(const Graph& g, std::uint64_t seed) {
  std::vector<Edge> order = g.edges();
  Rng rng(seed);
  rng.shuffle(order);
  return consistent_port_numbering(g, order);
}

// Canonical numbering first, then seeded shuffles until `count` distinct
// numberings are collected (or the attempt budget runs out, for graphs that
// admit fewer).
inline std::vector<PortNumbering> distinct_port_numberings(const Graph& g, int count, std::uint64_t seed) {
  std::vector<PortNumbering> out;
  if (count < 1) return out;
  out.push_back(consistent_port_numbering(g));
  std::uint64_t s = seed;
  for (int attempts = 0; static_cast<int>(out.size()) < count && attempts < 64 * count; ++attempts) {
    PortNumbering p = shuffled_port_numbering(g, s++);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

// The node that sends into port i of v, with its own back port. nullopt is
// the out-of-range symbol for i > deg(v).
inline std::optional<Port> port_lookup(const Graph& g, const PortNumbering& p, int v, int i) {
  g.check_node(v);
  if (i < 1) throw InvalidParams("port index must be positive");
  if (i > g.degree(v)) return std::nullopt;
  return p.forward(v, i);
}

}  // namespace portgnn
