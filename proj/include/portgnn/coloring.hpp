#pragma once

#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"

namespace portgnn {

struct Coloring {
  std::vector<int> color;  // color[v-1] in {0, 1}
  int of(int v) const { return color.at(static_cast<std::size_t>(v) - 1); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// BFS layer parity per connected component, rooted at the lowest node id.
// Requires min degree >= 1: an isolated node has no oppositely colored
// neighbor, so no weak 2-coloring exists.
inline Coloring weak_two_coloring(const Graph& g) {
  const int n = g.num_nodes();
  Coloring c;
  c.color.assign(static_cast<std::size_t>(n), 0);
  if (n == 0) return c;
  if (g.min_degree() == 0) throw NoWeakColoring("graph has an isolated node");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (int root = 1; root <= n; ++root) {
    if (seen[static_cast<std::size_t>(root) - 1]) continue;
    queue.clear();
    queue.push_back(root);
    seen[static_cast<std::size_t>(root) - 1] = 1;
    c.color[static_cast<std::size_t>(root) - 1] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int u : g.neighbors(v)) {
        if (!seen[static_cast<std::size_t>(u) - 1]) {
          seen[static_cast<std::size_t>(u) - 1] = 1;
          c.color[static_cast<std::size_t>(u) - 1] = 1 - c.color[static_cast<std::size_t>(v) - 1];
          queue.push_back(u);
        }
      }
    }
  }
  return c;
}

inline bool has_binary_colors(const Graph& g, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != g.num_nodes()) return false;
  for (int x : c.color)
    if (x != 0 && x != 1) return false;
  return true;
}

// Every node has at least one neighbor of the opposite color.
inline bool is_weak_two_coloring(const Graph& g, const Coloring& c) {
  if (!has_binary_colors(g, c)) return false;
  for (int v = 1; v <= g.num_nodes(); ++v) {
    bool ok = false;
    for (int u : g.neighbors(v)) {
      if (c.of(u) != c.of(v)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

// No monochromatic edge.
inline bool is_proper_two_coloring(const Graph& g, const Coloring& c) {
  if (!has_binary_colors(g, c)) return false;
  for (const Edge& e : g.edges())
    if (c.of(e.u) == c.of(e.v)) return false;
  return true;
}

}  // namespace portgnn
