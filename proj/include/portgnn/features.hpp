#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/coloring.hpp"
#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"

namespace portgnn {

enum class FeatureSpec { Degree, DegreeWeak2, Degree2Color };

// Node feature rows, one per node (row v is rows[v-1]), uniform width.
struct FeatureMatrix {
  int width = 0;
  std::vector<Eigen::VectorXd> rows;
  const Eigen::VectorXd& row(int v) const { return rows.at(static_cast<std::size_t>(v) - 1); }
};

// ONEHOT(deg(v)) over [delta], optionally followed by the color bit.
inline FeatureMatrix node_features(const Graph& g, int delta, FeatureSpec spec,
                                   const Coloring* coloring = nullptr) {
  if (delta < 1) throw InvalidParams("delta must be >= 1");
  if (g.max_degree() > delta)
    throw ShapeError("graph degree " + std::to_string(g.max_degree()) + " exceeds bound " + std::to_string(delta));
  const bool with_color = spec != FeatureSpec::Degree;
  if (with_color) {
    if (coloring == nullptr || static_cast<int>(coloring->color.size()) != g.num_nodes())
      throw InvalidColoring("feature spec requires a coloring of all nodes");
    if (spec == FeatureSpec::DegreeWeak2 && !is_weak_two_coloring(g, *coloring))
      throw InvalidColoring("not a weak 2-coloring");
    if (spec == FeatureSpec::Degree2Color && !is_proper_two_coloring(g, *coloring))
      throw InvalidColoring("not a proper 2-coloring");
  }
  FeatureMatrix x;
  x.width = delta + (with_color ? 1 : 0);
  x.rows.reserve(static_cast<std::size_t>(g.num_nodes()));
  for (int v = 1; v <= g.num_nodes(); ++v) {
    const int d = g.degree(v);
    if (d == 0) throw IsolatedNode("degree one-hot undefined for isolated node " + std::to_string(v));
    Eigen::VectorXd row = Eigen::VectorXd::Zero(x.width);
    row[d - 1] = 1.0;
    if (with_color) row[delta] = static_cast<double>(coloring->of(v));
    x.rows.push_back(std::move(row));
  }
  return x;
}

inline std::vector<std::vector<double>> to_rows(const FeatureMatrix& x) {
  std::vector<std::vector<double>> out;
  out.reserve(x.rows.size());
  for (const auto& r : x.rows) out.emplace_back(r.data(), r.data() + r.size());
  return out;
}

}  // namespace portgnn
