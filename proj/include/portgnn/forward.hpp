#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/features.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/model.hpp"
#include "portgnn/ports.hpp"

namespace portgnn {

inline Eigen::VectorXd relu(const Eigen::VectorXd& x) { return x.cwiseMax(0.0); }

inline Eigen::VectorXd sigmoid(const Eigen::VectorXd& x) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-x[i]));
  return out;
}

// One far-end input to a port-concatenation layer; z == nullptr encodes the
// out-of-range symbol (zero embedding, back-port scalar 0).
struct PortFeed {
  const double* z = nullptr;
  int back_port = 0;
};

// Concat(z_v, z_1, q_1, ..., z_delta, q_delta) where (z_i, q_i) is the far
// embedding and back-port of port i. Shared by the direct forward pass and
// the message-passing wrapper, so both assemble bit-identical inputs.
inline Eigen::VectorXd vvc_concat(const Eigen::VectorXd& own, const std::vector<PortFeed>& ports, int delta) {
  const int d = static_cast<int>(own.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(vvc_concat_dim(d, delta));
  c.head(d) = own;
  int off = d;
  for (int i = 0; i < delta; ++i) {
    const PortFeed& pf = ports[static_cast<std::size_t>(i)];
    if (pf.z != nullptr) {
      for (int k = 0; k < d; ++k) c[off + k] = pf.z[k];
      c[off + d] = static_cast<double>(pf.back_port);
    }
    off += d + 1;
  }
  return c;
}

inline Eigen::VectorXd vvc_layer(const Eigen::MatrixXd& w, const Eigen::VectorXd& concat) {
  if (w.cols() != concat.size()) throw ShapeError("layer input width mismatch");
  return relu(w * concat);
}

inline Eigen::VectorXd mlp_apply(const Mlp& m, const Eigen::VectorXd& z, Eigen::VectorXd* hidden_out = nullptr) {
  if (m.w1.cols() != z.size()) throw ShapeError("readout input width mismatch");
  Eigen::VectorXd h = relu(m.w1 * z + m.b1);
  Eigen::VectorXd out = m.w2 * h + m.b2;
  if (hidden_out != nullptr) *hidden_out = std::move(h);
  return out;
}

// Everything the backward pass needs from one forward evaluation.
struct ForwardTape {
  std::vector<std::vector<Eigen::VectorXd>> z;        // [l][v-1], l = 0..L, post-activation embeddings
  std::vector<std::vector<Eigen::VectorXd>> concat;   // VVC: layer input per node
  std::vector<std::vector<std::vector<int>>> sb_arg;  // SB: pooled-from neighbor per output coordinate
  std::vector<Eigen::VectorXd> hidden;                // readout hidden activations
  std::vector<Eigen::VectorXd> out;                   // readout vectors
};

namespace detail {
inline void check_features(const Model& m, const Graph& g, const FeatureMatrix& x) {
  if (static_cast<int>(x.rows.size()) != g.num_nodes()) throw ShapeError("feature rows != node count");
  if (x.width != m.feature_dim)
    throw ShapeError("feature width " + std::to_string(x.width) + " != model input " +
                     std::to_string(m.feature_dim));
}
}  // namespace detail

// Port-concatenation forward pass; returns per-node readout vectors.
inline std::vector<Eigen::VectorXd> cpngnn_forward(const Model& m, const Graph& g, const PortNumbering& p,
                                                   const FeatureMatrix& x, ForwardTape* tape = nullptr) {
  if (m.kind != ModelKind::VVC) throw ShapeError("cpngnn_forward requires a vvc model");
  validate_shapes(m);
  detail::check_features(m, g, x);
  if (g.max_degree() > m.delta) throw ShapeError("graph degree exceeds the model's bound");
  const int n = g.num_nodes();
  std::vector<std::vector<Eigen::VectorXd>> z;
  z.push_back(x.rows);
  std::vector<std::vector<Eigen::VectorXd>> concats;
  for (int l = 0; l < m.layers(); ++l) {
    std::vector<Eigen::VectorXd> next(static_cast<std::size_t>(n));
    std::vector<Eigen::VectorXd> cs(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
      std::vector<PortFeed> feeds(static_cast<std::size_t>(m.delta));
      for (int i = 1; i <= g.degree(v); ++i) {
        const Port q = p.forward(v, i);
        feeds[static_cast<std::size_t>(i) - 1] =
            PortFeed{z[static_cast<std::size_t>(l)][static_cast<std::size_t>(q.node) - 1].data(), q.index};
      }
      cs[static_cast<std::size_t>(v) - 1] =
          vvc_concat(z[static_cast<std::size_t>(l)][static_cast<std::size_t>(v) - 1], feeds, m.delta);
      next[static_cast<std::size_t>(v) - 1] = vvc_layer(m.weights[static_cast<std::size_t>(l)],
                                                        cs[static_cast<std::size_t>(v) - 1]);
    }
    z.push_back(std::move(next));
    concats.push_back(std::move(cs));
  }
  std::vector<Eigen::VectorXd> outs(static_cast<std::size_t>(n));
  std::vector<Eigen::VectorXd> hidden(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    outs[static_cast<std::size_t>(v) - 1] = mlp_apply(m.readout, z.back()[static_cast<std::size_t>(v) - 1],
                                                      &hidden[static_cast<std::size_t>(v) - 1]);
  if (tape != nullptr) {
    tape->z = std::move(z);
    tape->concat = std::move(concats);
    tape->sb_arg.clear();
    tape->hidden = std::move(hidden);
    tape->out = outs;
  }
  return outs;
}

// Mean-aggregation forward pass: z' = [z_v ; mean_u(W z_u)].
inline std::vector<Eigen::VectorXd> mbgnn_forward(const Model& m, const Graph& g, const FeatureMatrix& x,
                                                  ForwardTape* tape = nullptr) {
  if (m.kind != ModelKind::MB) throw ShapeError("mbgnn_forward requires an mb model");
  validate_shapes(m);
  detail::check_features(m, g, x);
  if (g.num_nodes() > 0 && g.min_degree() == 0) throw IsolatedNode("mean aggregation needs min degree >= 1");
  const int n = g.num_nodes();
  std::vector<std::vector<Eigen::VectorXd>> z;
  z.push_back(x.rows);
  for (int l = 0; l < m.layers(); ++l) {
    const auto& w = m.weights[static_cast<std::size_t>(l)];
    const int d = static_cast<int>(w.cols());
    const int r = static_cast<int>(w.rows());
    std::vector<Eigen::VectorXd> next(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(r);
      for (int u : g.neighbors(v)) acc += w * z[static_cast<std::size_t>(l)][static_cast<std::size_t>(u) - 1];
      Eigen::VectorXd nz(d + r);
      nz.head(d) = z[static_cast<std::size_t>(l)][static_cast<std::size_t>(v) - 1];
      nz.tail(r) = acc / static_cast<double>(g.degree(v));
      next[static_cast<std::size_t>(v) - 1] = std::move(nz);
    }
    z.push_back(std::move(next));
  }
  std::vector<Eigen::VectorXd> outs(static_cast<std::size_t>(n));
  std::vector<Eigen::VectorXd> hidden(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    outs[static_cast<std::size_t>(v) - 1] = mlp_apply(m.readout, z.back()[static_cast<std::size_t>(v) - 1],
                                                      &hidden[static_cast<std::size_t>(v) - 1]);
  if (tape != nullptr) {
    tape->z = std::move(z);
    tape->concat.clear();
    tape->sb_arg.clear();
    tape->hidden = std::move(hidden);
    tape->out = outs;
  }
  return outs;
}

// Max-pooling forward pass: z' = max_u sigmoid(W z_u + b), elementwise over
// the neighbor set. Invariant to neighbor multiplicity by construction.
inline std::vector<Eigen::VectorXd> sbgnn_forward(const Model& m, const Graph& g, const FeatureMatrix& x,
                                                  ForwardTape* tape = nullptr) {
  if (m.kind != ModelKind::SB) throw ShapeError("sbgnn_forward requires an sb model");
  validate_shapes(m);
  detail::check_features(m, g, x);
  if (g.num_nodes() > 0 && g.min_degree() == 0) throw IsolatedNode("pooling needs min degree >= 1");
  const int n = g.num_nodes();
  std::vector<std::vector<Eigen::VectorXd>> z;
  z.push_back(x.rows);
  std::vector<std::vector<std::vector<int>>> args;
  for (int l = 0; l < m.layers(); ++l) {
    const auto& w = m.weights[static_cast<std::size_t>(l)];
    const auto& b = m.biases[static_cast<std::size_t>(l)];
    const int r = static_cast<int>(w.rows());
    std::vector<Eigen::VectorXd> next(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> arg(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
      Eigen::VectorXd pooled;
      std::vector<int> from(static_cast<std::size_t>(r), 0);
      bool first = true;
      for (int u : g.neighbors(v)) {
        const Eigen::VectorXd t = sigmoid(w * z[static_cast<std::size_t>(l)][static_cast<std::size_t>(u) - 1] + b);
        if (first) {
          pooled = t;
          std::fill(from.begin(), from.end(), u);
          first = false;
        } else {
          for (int k = 0; k < r; ++k) {
            if (t[k] > pooled[k]) {  // ties keep the first (lowest-id) neighbor
              pooled[k] = t[k];
              from[static_cast<std::size_t>(k)] = u;
            }
          }
        }
      }
      next[static_cast<std::size_t>(v) - 1] = std::move(pooled);
      arg[static_cast<std::size_t>(v) - 1] = std::move(from);
    }
    z.push_back(std::move(next));
    args.push_back(std::move(arg));
  }
  std::vector<Eigen::VectorXd> outs(static_cast<std::size_t>(n));
  std::vector<Eigen::VectorXd> hidden(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    outs[static_cast<std::size_t>(v) - 1] = mlp_apply(m.readout, z.back()[static_cast<std::size_t>(v) - 1],
                                                      &hidden[static_cast<std::size_t>(v) - 1]);
  if (tape != nullptr) {
    tape->z = std::move(z);
    tape->concat.clear();
    tape->sb_arg = std::move(args);
    tape->hidden = std::move(hidden);
    tape->out = outs;
  }
  return outs;
}

// Dispatch on the model kind; `p` may be null for MB/SB (they ignore ports).
inline std::vector<Eigen::VectorXd> model_forward(const Model& m, const Graph& g, const PortNumbering* p,
                                                  const FeatureMatrix& x, ForwardTape* tape = nullptr) {
  switch (m.kind) {
    case ModelKind::VVC:
      if (p == nullptr) throw InvalidParams("vvc forward needs a port numbering");
      return cpngnn_forward(m, g, *p, x, tape);
    case ModelKind::MB: return mbgnn_forward(m, g, x, tape);
    case ModelKind::SB: return sbgnn_forward(m, g, x, tape);
  }
  throw InvalidParams("unknown model kind");
}

// Argmax with ties broken toward the lowest index.
inline int readout(const Eigen::VectorXd& z) {
  if (z.size() == 0) throw InvalidParams("empty readout vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(z.size()); ++i)
    if (z[i] > z[best]) best = i;
  return best;
}

inline std::vector<int> readout_all(const std::vector<Eigen::VectorXd>& outs) {
  std::vector<int> labels;
  labels.reserve(outs.size());
  for (const auto& z : outs) labels.push_back(readout(z));
  return labels;
}

// Per-node port bit vectors for edge problems: bit i of node v answers
// "yes/no" for the edge on port i. Bits past deg(v) must be zero.
struct EdgePortLabels {
  int delta = 0;
  std::vector<std::vector<int>> bits;  // [v-1][i-1], each row of length delta
};

// Keep edge {u, v} with p(u, i) = (v, j) iff both port bits are set.
inline std::vector<Edge> decode_edge_output(const Graph& g, const PortNumbering& p, const EdgePortLabels& y) {
  if (static_cast<int>(y.bits.size()) != g.num_nodes()) throw InvalidParams("bit rows != node count");
  for (int v = 1; v <= g.num_nodes(); ++v) {
    const auto& row = y.bits[static_cast<std::size_t>(v) - 1];
    if (static_cast<int>(row.size()) != y.delta) throw InvalidParams("bit row width != delta");
    for (int i = 1; i <= y.delta; ++i) {
      const int bit = row[static_cast<std::size_t>(i) - 1];
      if (bit != 0 && bit != 1) throw InvalidParams("port bits must be 0/1");
      if (i > g.degree(v) && bit != 0) throw InvalidParams("bit set past deg(v)");
    }
  }
  std::vector<Edge> out;
  for (int v = 1; v <= g.num_nodes(); ++v) {
    for (int i = 1; i <= g.degree(v); ++i) {
      const Port q = p.forward(v, i);
      if (v < q.node && y.bits[static_cast<std::size_t>(v) - 1][static_cast<std::size_t>(i) - 1] == 1 &&
          y.bits[static_cast<std::size_t>(q.node) - 1][static_cast<std::size_t>(q.index) - 1] == 1)
        out.push_back(Edge{v, q.node});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace portgnn
