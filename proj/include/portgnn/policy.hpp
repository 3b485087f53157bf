#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "portgnn/forward.hpp"
#include "portgnn/model.hpp"
#include "portgnn/rng.hpp"

namespace portgnn {

// Stochastic per-node labeling policy: each node's action distribution is
// the softmax of its readout vector (scaled by the temperature).
struct Policy {
  Model model;
  double temperature = 1.0;
};

inline Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double mx = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - mx).exp();
  return e / e.sum();
}

inline Eigen::VectorXd policy_probs(const Policy& pol, const Eigen::VectorXd& readout_vec) {
  if (!(pol.temperature > 0.0)) throw InvalidParams("temperature must be positive");
  return softmax(readout_vec / pol.temperature);
}

inline int sample_categorical(const Eigen::VectorXd& probs, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return static_cast<int>(probs.size()) - 1;  // absorb accumulated rounding
}

struct ActionSample {
  std::vector<int> labels;
  double log_prob = 0.0;
};

// Independent categorical draws per node; log_prob is the joint log density.
inline ActionSample sample_actions(const Policy& pol, const Graph& g, const PortNumbering& p,
                                   const FeatureMatrix& x, Rng& rng) {
  const auto outs = model_forward(pol.model, g, &p, x);
  ActionSample s;
  s.labels.reserve(outs.size());
  for (const auto& z : outs) {
    const Eigen::VectorXd probs = policy_probs(pol, z);
    const int a = sample_categorical(probs, rng);
    s.labels.push_back(a);
    s.log_prob += std::log(probs[a]);
  }
  return s;
}

inline std::vector<int> greedy_actions(const Policy& pol, const Graph& g, const PortNumbering& p,
                                       const FeatureMatrix& x) {
  return readout_all(model_forward(pol.model, g, &p, x));
}

inline double action_log_prob(const Policy& pol, const Graph& g, const PortNumbering& p,
                              const FeatureMatrix& x, const std::vector<int>& labels) {
  const auto outs = model_forward(pol.model, g, &p, x);
  if (labels.size() != outs.size()) throw ShapeError("labels size != node count");
  double lp = 0.0;
  for (std::size_t v = 0; v < outs.size(); ++v) {
    const Eigen::VectorXd probs = policy_probs(pol, outs[v]);
    lp += std::log(probs[labels[v]]);
  }
  return lp;
}

}  // namespace portgnn
