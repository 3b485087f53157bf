#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/kind.hpp"
#include "portgnn/rng.hpp"

namespace portgnn {

// Two affine maps with a rectifier between them.
struct Mlp {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
};

// Input width of a port-concatenation layer: the own embedding plus, per
// port, a neighbor embedding and one back-port scalar.
inline int vvc_concat_dim(int d, int delta) { return d + delta * (d + 1); }

struct ModelConfig {
  ModelKind kind = ModelKind::VVC;
  int delta = 1;
  int feature_dim = 1;
  std::vector<int> layer_dims = {8};  // per-layer output width (VVC/SB) or aggregation width (MB)
  int readout_hidden = 0;             // 0: max(16, 2 * final embedding width)
  int num_labels = 2;
};

// Layered weights plus the readout perceptron. MB layers concatenate the own
// embedding with the aggregated neighborhood, so their embedding width grows
// by the aggregation width each layer; VVC and SB layers replace it.
struct Model {
  ModelKind kind = ModelKind::VVC;
  int delta = 0;
  int feature_dim = 0;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;  // SB pooling biases; empty otherwise
  Mlp readout;

  int layers() const { return static_cast<int>(weights.size()); }
  int embed_dim() const { return static_cast<int>(readout.w1.cols()); }
  int num_labels() const { return static_cast<int>(readout.w2.rows()); }
};

// Embedding widths d_1 .. d_{L+1} implied by a config.
inline std::vector<int> embed_dims(const ModelConfig& cfg) {
  std::vector<int> d{cfg.feature_dim};
  for (int r : cfg.layer_dims) {
    if (r < 1) throw InvalidParams("layer width must be >= 1");
    d.push_back(cfg.kind == ModelKind::MB ? d.back() + r : r);
  }
  return d;
}

inline void validate_shapes(const Model& m) {
  if (m.delta < 1) throw ShapeError("model delta must be >= 1");
  if (m.feature_dim < 1) throw ShapeError("feature width must be >= 1");
  if (m.weights.empty()) throw ShapeError("model needs at least one layer");
  if (m.kind == ModelKind::SB && m.biases.size() != m.weights.size())
    throw ShapeError("pooling model needs one bias per layer");
  if (m.kind != ModelKind::SB && !m.biases.empty())
    throw ShapeError("only pooling layers carry biases");
  int d = m.feature_dim;
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    const auto& w = m.weights[l];
    const int want_cols = m.kind == ModelKind::VVC ? vvc_concat_dim(d, m.delta) : d;
    if (w.cols() != want_cols)
      throw ShapeError("layer " + std::to_string(l) + " input width " + std::to_string(w.cols()) +
                       " != " + std::to_string(want_cols));
    if (w.rows() < 1) throw ShapeError("layer output width must be >= 1");
    if (m.kind == ModelKind::SB && m.biases[l].size() != w.rows())
      throw ShapeError("bias width mismatch at layer " + std::to_string(l));
    d = m.kind == ModelKind::MB ? d + static_cast<int>(w.rows()) : static_cast<int>(w.rows());
  }
  if (m.readout.w1.cols() != d) throw ShapeError("readout input width mismatch");
  if (m.readout.b1.size() != m.readout.w1.rows()) throw ShapeError("readout hidden bias mismatch");
  if (m.readout.w2.cols() != m.readout.w1.rows()) throw ShapeError("readout hidden width mismatch");
  if (m.readout.b2.size() != m.readout.w2.rows()) throw ShapeError("readout output bias mismatch");
}

// Fresh model with all parameters drawn uniformly from (-0.1, 0.1), filled in
// a fixed order so a seed pins the model exactly.
inline Model make_model(const ModelConfig& cfg, Rng& rng) {
  if (cfg.delta < 1 || cfg.feature_dim < 1 || cfg.num_labels < 1 || cfg.layer_dims.empty())
    throw InvalidParams("bad model config");
  auto mat = [&rng](int r, int c) {
    Eigen::MatrixXd w(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) w(i, j) = rng.uniform(-0.1, 0.1);
    return w;
  };
  auto vec = [&rng](int r) {
    Eigen::VectorXd b(r);
    for (int i = 0; i < r; ++i) b[i] = rng.uniform(-0.1, 0.1);
    return b;
  };
  const std::vector<int> dims = embed_dims(cfg);
  Model m;
  m.kind = cfg.kind;
  m.delta = cfg.delta;
  m.feature_dim = cfg.feature_dim;
  for (std::size_t l = 0; l < cfg.layer_dims.size(); ++l) {
    const int din = dims[l];
    const int r = cfg.layer_dims[l];
    m.weights.push_back(mat(r, m.kind == ModelKind::VVC ? vvc_concat_dim(din, cfg.delta) : din));
    if (m.kind == ModelKind::SB) m.biases.push_back(vec(r));
  }
  const int embed = dims.back();
  const int hidden = cfg.readout_hidden > 0 ? cfg.readout_hidden : std::max(16, 2 * embed);
  m.readout.w1 = mat(hidden, embed);
  m.readout.b1 = vec(hidden);
  m.readout.w2 = mat(cfg.num_labels, hidden);
  m.readout.b2 = vec(cfg.num_labels);
  validate_shapes(m);
  return m;
}

inline Model zeros_like(const Model& m) {
  Model z = m;
  for (auto& w : z.weights) w.setZero();
  for (auto& b : z.biases) b.setZero();
  z.readout.w1.setZero();
  z.readout.b1.setZero();
  z.readout.w2.setZero();
  z.readout.b2.setZero();
  return z;
}

namespace detail {
template <class M, class F>
void visit_tensors(M& m, F&& f) {
  for (auto& w : m.weights) f(w);
  for (auto& b : m.biases) f(b);
  f(m.readout.w1);
  f(m.readout.b1);
  f(m.readout.w2);
  f(m.readout.b2);
}
}  // namespace detail

// Visit every scalar parameter in a fixed order.
template <class F>
void for_each_param(const Model& m, F&& f) {
  detail::visit_tensors(m, [&](const auto& t) {
    const double* p = t.data();
    for (Eigen::Index i = 0; i < t.size(); ++i) f(p[i]);
  });
}

inline std::size_t param_count(const Model& m) {
  std::size_t n = 0;
  for_each_param(m, [&](double) { ++n; });
  return n;
}

// Flat pointer list in the same fixed order, for in-place perturbation.
inline std::vector<double*> param_ptrs(Model& m) {
  std::vector<double*> out;
  detail::visit_tensors(m, [&](auto& t) {
    double* p = t.data();
    for (Eigen::Index i = 0; i < t.size(); ++i) out.push_back(p + i);
  });
  return out;
}

// m += alpha * g; shapes must match.
inline void axpy(double alpha, const Model& g, Model& m) {
  if (g.weights.size() != m.weights.size() || g.biases.size() != m.biases.size())
    throw ShapeError("axpy: layer counts differ");
  for (std::size_t l = 0; l < m.weights.size(); ++l) m.weights[l] += alpha * g.weights[l];
  for (std::size_t l = 0; l < m.biases.size(); ++l) m.biases[l] += alpha * g.biases[l];
  m.readout.w1 += alpha * g.readout.w1;
  m.readout.b1 += alpha * g.readout.b1;
  m.readout.w2 += alpha * g.readout.w2;
  m.readout.b2 += alpha * g.readout.b2;
}

inline bool all_finite(const Model& m) {
  bool ok = true;
  for_each_param(m, [&](double x) { ok = ok && std::isfinite(x); });
  return ok;
}

inline bool same_params(const Model& a, const Model& b) {
  if (param_count(a) != param_count(b)) return false;
  std::vector<double> va, vb;
  for_each_param(a, [&](double x) { va.push_back(x); });
  for_each_param(b, [&](double x) { vb.push_back(x); });
  for (std::size_t i = 0; i < va.size(); ++i)
    if (va[i] != vb[i]) return false;
  return true;
}

}  // namespace portgnn
