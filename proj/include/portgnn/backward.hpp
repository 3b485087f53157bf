#pragma once

#include <Eigen/Dense>
#include <vector>

#include "portgnn/forward.hpp"
#include "portgnn/model.hpp"

namespace portgnn {

// Reverse-mode gradients through readout and layers. dout[v-1] is the
// gradient of the objective with respect to node v's readout vector; the
// result has the model's shapes. `p` is required for VVC models only.
inline Model model_backward(const Model& m, const Graph& g, const PortNumbering* p, const ForwardTape& tape,
                            const std::vector<Eigen::VectorXd>& dout) {
  const int n = g.num_nodes();
  if (static_cast<int>(dout.size()) != n) throw ShapeError("dout rows != node count");
  Model grad = zeros_like(m);
  if (n == 0) return grad;
  const int L = m.layers();

  // readout
  std::vector<Eigen::VectorXd> dz(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const Eigen::VectorXd& h = tape.hidden[static_cast<std::size_t>(v)];
    const Eigen::VectorXd& zl = tape.z[static_cast<std::size_t>(L)][static_cast<std::size_t>(v)];
    const Eigen::VectorXd& go = dout[static_cast<std::size_t>(v)];
    grad.readout.w2 += go * h.transpose();
    grad.readout.b2 += go;
    Eigen::VectorXd dh = m.readout.w2.transpose() * go;
    for (Eigen::Index k = 0; k < dh.size(); ++k)
      if (h[k] <= 0.0) dh[k] = 0.0;  // rectifier subgradient
    grad.readout.w1 += dh * zl.transpose();
    grad.readout.b1 += dh;
    dz[static_cast<std::size_t>(v)] = m.readout.w1.transpose() * dh;
  }

  for (int l = L - 1; l >= 0; --l) {
    const auto& zprev = tape.z[static_cast<std::size_t>(l)];
    const auto& znext = tape.z[static_cast<std::size_t>(l) + 1];
    const int d = static_cast<int>(zprev[0].size());
    std::vector<Eigen::VectorXd> dprev(static_cast<std::size_t>(n), Eigen::VectorXd::Zero(d));
    switch (m.kind) {
      case ModelKind::VVC: {
        const auto& w = m.weights[static_cast<std::size_t>(l)];
        for (int v = 1; v <= n; ++v) {
          Eigen::VectorXd da = dz[static_cast<std::size_t>(v) - 1];
          for (Eigen::Index k = 0; k < da.size(); ++k)
            if (znext[static_cast<std::size_t>(v) - 1][k] <= 0.0) da[k] = 0.0;
          grad.weights[static_cast<std::size_t>(l)] +=
              da * tape.concat[static_cast<std::size_t>(l)][static_cast<std::size_t>(v) - 1].transpose();
          const Eigen::VectorXd dc = w.transpose() * da;
          dprev[static_cast<std::size_t>(v) - 1] += dc.head(d);
          int off = d;
          for (int i = 1; i <= m.delta; ++i) {
            if (i <= g.degree(v)) {
              const Port q = p->forward(v, i);
              dprev[static_cast<std::size_t>(q.node) - 1] += dc.segment(off, d);
            }
            off += d + 1;  // the back-port scalar is a constant input
          }
        }
        break;
      }
      case ModelKind::MB: {
        const auto& w = m.weights[static_cast<std::size_t>(l)];
        const int r = static_cast<int>(w.rows());
        for (int v = 1; v <= n; ++v) {
          const Eigen::VectorXd& dn = dz[static_cast<std::size_t>(v) - 1];
          dprev[static_cast<std::size_t>(v) - 1] += dn.head(d);
          const double inv = 1.0 / static_cast<double>(g.degree(v));
          const Eigen::VectorXd dagg = inv * dn.tail(r);
          Eigen::VectorXd zsum = Eigen::VectorXd::Zero(d);
          for (int u : g.neighbors(v)) zsum += zprev[static_cast<std::size_t>(u) - 1];
          grad.weights[static_cast<std::size_t>(l)] += dagg * zsum.transpose();
          const Eigen::VectorXd back = w.transpose() * dagg;
          for (int u : g.neighbors(v)) dprev[static_cast<std::size_t>(u) - 1] += back;
        }
        break;
      }
      case ModelKind::SB: {
        const auto& w = m.weights[static_cast<std::size_t>(l)];
        const int r = static_cast<int>(w.rows());
        for (int v = 1; v <= n; ++v) {
          const auto& from = tape.sb_arg[static_cast<std::size_t>(l)][static_cast<std::size_t>(v) - 1];
          for (int k = 0; k < r; ++k) {
            const double s = znext[static_cast<std::size_t>(v) - 1][k];
            const double gk = dz[static_cast<std::size_t>(v) - 1][k] * s * (1.0 - s);
            const int u = from[static_cast<std::size_t>(k)];
            grad.weights[static_cast<std::size_t>(l)].row(k) +=
                gk * zprev[static_cast<std::size_t>(u) - 1].transpose();
            grad.biases[static_cast<std::size_t>(l)][k] += gk;
            dprev[static_cast<std::size_t>(u) - 1] += gk * w.row(k).transpose();
          }
        }
        break;
      }
    }
    dz = std::move(dprev);
  }
  return grad;
}

}  // namespace portgnn
