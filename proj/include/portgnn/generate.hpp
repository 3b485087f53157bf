#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/rng.hpp"

namespace portgnn {

// K_{1,k}: center node 1, leaves 2..k+1.
inline Graph make_star(int k) {
  if (k < 1) throw InvalidParams("star needs at least one leaf");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) edges.push_back({1, i + 2});
  return Graph(k + 1, edges);
}

inline Graph make_path(int n) {
  if (n < 1) throw InvalidParams("path needs at least one node");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, edges);
}

inline Graph make_cycle(int n) {
  if (n < 3) throw InvalidParams("cycle needs at least three nodes");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({n, 1});
  return Graph(n, edges);
}

// Random graph with max degree <= delta and min degree >= 1. A random
// near-perfect matching guarantees the degree floor; extra edges are then
// admitted with a per-graph acceptance probability, so densities vary with
// the seed. Deterministic for a fixed (n, delta, seed).
inline Graph random_bounded(int n, int delta, std::uint64_t seed) {
  if (n < 2) throw InvalidParams("random_bounded needs at least two nodes");
  if (delta < 1) throw InvalidParams("delta must be >= 1");
  if (delta == 1 && n % 2 != 0)
    throw InvalidParams("min degree 1 with delta 1 needs an even node count");
  Rng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) perm[static_cast<std::size_t>(v) - 1] = v;
  rng.shuffle(perm);

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edges;
  auto add = [&](int u, int v) {
    edges.push_back({u, v});
    ++deg[static_cast<std::size_t>(u) - 1];
    ++deg[static_cast<std::size_t>(v) - 1];
  };
  for (int i = 0; i + 1 < n; i += 2) add(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
  if (n % 2 != 0) add(perm[static_cast<std::size_t>(n) - 1], perm[0]);

  std::vector<std::pair<int, int>> candidates;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) candidates.push_back({u, v});
  rng.shuffle(candidates);
  const double accept = rng.uniform(0.1, 0.9);
  Graph base(n, edges);  // for duplicate lookups against the matching
  for (const auto& [u, v] : candidates) {
    if (base.has_edge(u, v)) continue;
    if (deg[static_cast<std::size_t>(u) - 1] >= delta || deg[static_cast<std::size_t>(v) - 1] >= delta) continue;
    if (rng.uniform01() >= accept) continue;
    add(u, v);
  }
  return Graph(n, edges);
}

// Random bipartite graph on parts 1..a and a+1..a+b with max degree <= delta
// and min degree >= 1.
inline Graph random_bipartite(int a, int b, int delta, std::uint64_t seed) {
  if (a < 1 || b < 1) throw InvalidParams("both parts need at least one node");
  if (delta < 1) throw InvalidParams("delta must be >= 1");
  if (a > b * delta || b > a * delta)
    throw InvalidParams("degree bound too small to cover both parts");
  Rng rng(seed);
  // work with left = smaller part, then translate ids
  const bool swapped = a > b;
  const int small = swapped ? b : a;
  const int large = swapped ? a : b;
  auto left_id = [&](int i) { return swapped ? a + i : i; };        // i in 1..small
  auto right_id = [&](int j) { return swapped ? j : a + j; };       // j in 1..large

  std::vector<int> small_deg(static_cast<std::size_t>(small), 0);
  std::vector<int> large_deg(static_cast<std::size_t>(large), 0);
  std::vector<std::pair<int, int>> edges;
  auto add = [&](int i, int j) {
    edges.push_back({left_id(i), right_id(j)});
    ++small_deg[static_cast<std::size_t>(i) - 1];
    ++large_deg[static_cast<std::size_t>(j) - 1];
  };

  // each small-side node takes a distinct random large-side partner
  std::vector<int> partners(static_cast<std::size_t>(large));
  for (int j = 1; j <= large; ++j) partners[static_cast<std::size_t>(j) - 1] = j;
  rng.shuffle(partners);
  for (int i = 1; i <= small; ++i) add(i, partners[static_cast<std::size_t>(i) - 1]);

  // remaining large-side nodes round-robin over shuffled small-side nodes;
  // large - small <= small * (delta - 1), so the bound is respected
  std::vector<int> order(static_cast<std::size_t>(small));
  for (int i = 1; i <= small; ++i) order[static_cast<std::size_t>(i) - 1] = i;
  rng.shuffle(order);
  int cursor = 0;
  for (int j = small + 1; j <= large; ++j) {
    add(order[static_cast<std::size_t>(cursor)], partners[static_cast<std::size_t>(j) - 1]);
    cursor = (cursor + 1) % small;
  }

  std::vector<std::pair<int, int>> candidates;
  for (int i = 1; i <= small; ++i)
    for (int j = 1; j <= large; ++j) candidates.push_back({i, j});
  rng.shuffle(candidates);
  const double accept = rng.uniform(0.1, 0.9);
  Graph base(a + b, edges);
  for (const auto& [i, j] : candidates) {
    if (base.has_edge(left_id(i), right_id(j))) continue;
    if (small_deg[static_cast<std::size_t>(i) - 1] >= delta || large_deg[static_cast<std::size_t>(j) - 1] >= delta)
      continue;
    if (rng.uniform01() >= accept) continue;
    add(i, j);
  }
  return Graph(a + b, edges);
}

enum class GraphFamily { Star, Path, Cycle, RandomBounded, RandomBipartite };

struct GenSpec {
  GraphFamily family = GraphFamily::Star;
  int a = 0;      // star k, path/cycle/random n, bipartite left size
  int b = 0;      // bipartite right size
  int delta = 0;  // degree bound for the random families
};

inline Graph generate(const GenSpec& spec, std::uint64_t seed) {
  switch (spec.family) {
    case GraphFamily::Star: return make_star(spec.a);
    case GraphFamily::Path: return make_path(spec.a);
    case GraphFamily::Cycle: return make_cycle(spec.a);
    case GraphFamily::RandomBounded: return random_bounded(spec.a, spec.delta, seed);
    case GraphFamily::RandomBipartite: return random_bipartite(spec.a, spec.b, spec.delta, seed);
  }
  throw InvalidParams("unknown graph family");
}

}  // namespace portgnn
