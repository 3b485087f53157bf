#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/rng.hpp"

namespace portgnn {

inline constexpr int kMaxOracleNodes = 24;
inline constexpr int kMaxOracleEdges = 24;

using NodeSet = std::vector<int>;   // sorted ids
using EdgeSet = std::vector<Edge>;  // canonical order

enum class Problem { DominatingSet, VertexCover, Matching };
enum class Sense { Min, Max };

// Exact rational comparison value, with an explicit marker for the
// unbounded case of maximization ratios.
struct Ratio {
  long long num = 0;
  long long den = 1;
  bool infinite = false;

  static Ratio value(long long n, long long d) {
    if (d == 0) throw Undefined("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return Ratio{g != 0 ? n / g : n, g != 0 ? d / g : d, false};
  }
  static Ratio inf() { return Ratio{0, 1, true}; }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.num == b.num && a.den == b.den;
  }
  bool leq(long long k) const { return !infinite && num <= k * den; }
  bool leq(const Ratio& o) const {
    if (infinite) return o.infinite;
    if (o.infinite) return true;
    return num * o.den <= o.num * den;
  }
  double to_double() const { return infinite ? std::numeric_limits<double>::infinity() : static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const {
    if (infinite) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// candidate/opt for minimization, opt/candidate for maximization; an empty
// maximization candidate against a positive optimum has no finite ratio.
inline Ratio approx_ratio(long long candidate_size, long long opt_size, Sense sense) {
  if (candidate_size < 0 || opt_size < 0) throw InvalidParams("sizes must be non-negative");
  if (sense == Sense::Min) {
    if (opt_size == 0) throw Undefined("minimization ratio with optimum 0");
    return Ratio::value(candidate_size, opt_size);
  }
  if (opt_size == 0) {
    if (candidate_size == 0) return Ratio::value(1, 1);
    throw Undefined("candidate exceeds an optimum of 0");
  }
  if (candidate_size == 0) return Ratio::inf();
  return Ratio::value(opt_size, candidate_size);
}

namespace oracle_detail {

inline std::vector<std::uint32_t> closed_neighborhoods(const Graph& g) {
  std::vector<std::uint32_t> nb(static_cast<std::size_t>(g.num_nodes()));
  for (int v = 1; v <= g.num_nodes(); ++v) {
    std::uint32_t m = 1u << (v - 1);
    for (int u : g.neighbors(v)) m |= 1u << (u - 1);
    nb[static_cast<std::size_t>(v) - 1] = m;
  }
  return nb;
}

// First k-subset of {0..n-1}, in lexicographic order over the ascending
// index sequences, satisfying pred.
template <class Pred>
std::optional<std::vector<int>> first_combination(int n, int k, Pred&& pred) {
  if (k > n) return std::nullopt;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (pred(idx)) return idx;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return std::nullopt;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
  }
}

inline void check_oracle_size(const Graph& g) {
  if (g.num_nodes() > kMaxOracleNodes)
    throw TooLarge("exact solver capped at " + std::to_string(kMaxOracleNodes) + " nodes");
}

}  // namespace oracle_detail

// Exact minimum dominating set by subset enumeration in increasing
// cardinality; the first hit is the lexicographically smallest optimum.
inline NodeSet min_dominating_set(const Graph& g) {
  oracle_detail::check_oracle_size(g);
  const int n = g.num_nodes();
  if (n == 0) return {};
  const auto nb = oracle_detail::closed_neighborhoods(g);
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (int k = 1; k <= n; ++k) {
    auto hit = oracle_detail::first_combination(n, k, [&](const std::vector<int>& idx) {
      std::uint32_t cover = 0;
      for (int i : idx) cover |= nb[static_cast<std::size_t>(i)];
      return cover == full;
    });
    if (hit.has_value()) {
      NodeSet s;
      s.reserve(hit->size());
      for (int i : *hit) s.push_back(i + 1);
      return s;
    }
  }
  throw Error("internal: the full node set always dominates");
}

namespace oracle_detail {

inline void mvc_bb(const Graph& g, std::vector<char>& in_cover, int count, int& best) {
  const Edge* open = nullptr;
  for (const Edge& e : g.edges()) {
    if (!in_cover[static_cast<std::size_t>(e.u)] && !in_cover[static_cast<std::size_t>(e.v)]) {
      open = &e;
      break;
    }
  }
  if (open == nullptr) {
    if (count < best) best = count;
    return;
  }
  if (count + 1 >= best) return;  // bound: covering the open edge costs one more
  for (int pick : {open->u, open->v}) {
    in_cover[static_cast<std::size_t>(pick)] = 1;
    mvc_bb(g, in_cover, count + 1, best);
    in_cover[static_cast<std::size_t>(pick)] = 0;
  }
}

inline int mvc_opt_size(const Graph& g) {
  int best = g.num_nodes();
  std::vector<char> in_cover(static_cast<std::size_t>(g.num_nodes()) + 1, 0);
  mvc_bb(g, in_cover, 0, best);
  return best;
}

}  // namespace oracle_detail

// Exact minimum vertex cover: branch and bound on an uncovered edge (one of
// its endpoints must join), then the lexicographically smallest cover of the
// optimal size.
inline NodeSet min_vertex_cover(const Graph& g) {
  oracle_detail::check_oracle_size(g);
  const int n = g.num_nodes();
  const int k = oracle_detail::mvc_opt_size(g);
  auto hit = oracle_detail::first_combination(n, k, [&](const std::vector<int>& idx) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << i;
    for (const Edge& e : g.edges())
      if ((mask & (1u << (e.u - 1))) == 0 && (mask & (1u << (e.v - 1))) == 0) return false;
    return true;
  });
  if (!hit.has_value()) throw Error("internal: a cover of the optimal size always exists");
  NodeSet s;
  s.reserve(hit->size());
  for (int i : *hit) s.push_back(i + 1);
  return s;
}

// Exact maximum matching by edge-subset enumeration; ties resolve to the
// lexicographically smallest optimal set of canonical edge indices.
inline EdgeSet max_matching(const Graph& g) {
  const int m = g.num_edges();
  if (m > kMaxOracleEdges)
    throw TooLarge("matching enumeration capped at " + std::to_string(kMaxOracleEdges) + " edges");
  std::vector<std::uint32_t> conflict(static_cast<std::size_t>(m), 0);
  const auto& edges = g.edges();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Edge& a = edges[static_cast<std::size_t>(i)];
      const Edge& b = edges[static_cast<std::size_t>(j)];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
        conflict[static_cast<std::size_t>(i)] |= 1u << j;
        conflict[static_cast<std::size_t>(j)] |= 1u << i;
      }
    }
  }
  auto lex_before = [](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t d = a ^ b;
    if (d == 0) return false;
    return (a & (d & (~d + 1))) != 0;  // smaller lowest differing index wins
  };
  int best_count = -1;
  std::uint32_t best_mask = 0;
  const std::uint64_t end = std::uint64_t{1} << m;
  for (std::uint64_t mask64 = 0; mask64 < end; ++mask64) {
    const auto mask = static_cast<std::uint32_t>(mask64);
    bool ok = true;
    for (std::uint32_t rest = mask; rest != 0;) {
      const int i = std::countr_zero(rest);
      if ((conflict[static_cast<std::size_t>(i)] & mask) != 0) {
        ok = false;
        break;
      }
      rest &= rest - 1;
    }
    if (!ok) continue;
    const int count = std::popcount(mask);
    if (count > best_count || (count == best_count && lex_before(mask, best_mask))) {
      best_count = count;
      best_mask = mask;
    }
  }
  EdgeSet out;
  for (std::uint32_t rest = best_mask; rest != 0; rest &= rest - 1)
    out.push_back(edges[static_cast<std::size_t>(std::countr_zero(rest))]);
  return out;
}

namespace oracle_detail {

inline void check_node_set(const Graph& g, const NodeSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    g.check_node(s[i]);
    if (i > 0 && s[i] <= s[i - 1]) throw InvalidParams("node set must be strictly ascending");
  }
}

}  // namespace oracle_detail

// Validity only; no optimality claim.
inline bool check(Problem prob, const Graph& g, const NodeSet& candidate) {
  oracle_detail::check_node_set(g, candidate);
  switch (prob) {
    case Problem::DominatingSet: {
      std::vector<char> dominated(static_cast<std::size_t>(g.num_nodes()) + 1, 0);
      for (int v : candidate) {
        dominated[static_cast<std::size_t>(v)] = 1;
        for (int u : g.neighbors(v)) dominated[static_cast<std::size_t>(u)] = 1;
      }
      for (int v = 1; v <= g.num_nodes(); ++v)
        if (!dominated[static_cast<std::size_t>(v)]) return false;
      return true;
    }
    case Problem::VertexCover: {
      std::vector<char> in(static_cast<std::size_t>(g.num_nodes()) + 1, 0);
      for (int v : candidate) in[static_cast<std::size_t>(v)] = 1;
      for (const Edge& e : g.edges())
        if (!in[static_cast<std::size_t>(e.u)] && !in[static_cast<std::size_t>(e.v)]) return false;
      return true;
    }
    case Problem::Matching: throw InvalidParams("matching candidates are edge sets");
  }
  throw InvalidParams("unknown problem");
}

inline bool check(Problem prob, const Graph& g, const EdgeSet& candidate) {
  if (prob != Problem::Matching) throw InvalidParams("node problems take node sets");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const Edge& e = candidate[i];
    if (!g.has_edge(e.u, e.v) || e.u >= e.v) throw InvalidParams("candidate contains a non-edge");
    if (i > 0 && !(candidate[i - 1] < e)) throw InvalidParams("edge set must be strictly ascending");
  }
  std::vector<char> used(static_cast<std::size_t>(g.num_nodes()) + 1, 0);
  for (const Edge& e : candidate) {
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) return false;
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
  }
  return true;
}

// V itself: a dominating set within max_degree + 1 of the optimum.
inline NodeSet all_nodes_baseline(const Graph& g) {
  NodeSet s(static_cast<std::size_t>(g.num_nodes()));
  for (int v = 1; v <= g.num_nodes(); ++v) s[static_cast<std::size_t>(v) - 1] = v;
  return s;
}

// Endpoints of a greedy maximal matching: a vertex cover within twice the
// optimum. Canonical edge order unless a shuffle seed is given.
inline NodeSet matching_vc_baseline(const Graph& g, std::optional<std::uint64_t> seed = std::nullopt) {
  std::vector<Edge> order = g.edges();
  if (seed.has_value()) {
    Rng rng(*seed);
    rng.shuffle(order);
  }
  std::vector<char> matched(static_cast<std::size_t>(g.num_nodes()) + 1, 0);
  NodeSet out;
  for (const Edge& e : order) {
    if (!matched[static_cast<std::size_t>(e.u)] && !matched[static_cast<std::size_t>(e.v)]) {
      matched[static_cast<std::size_t>(e.u)] = matched[static_cast<std::size_t>(e.v)] = 1;
      out.push_back(e.u);
      out.push_back(e.v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace portgnn
