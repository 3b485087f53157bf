#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "portgnn/backward.hpp"
#include "portgnn/checkpoint.hpp"
#include "portgnn/features.hpp"
#include "portgnn/generate.hpp"
#include "portgnn/policy.hpp"
#include "portgnn/programs.hpp"

namespace portgnn {

// Defaults were chosen empirically on the single-leaf task: a bare constant
// step either plateaus on the symmetric leaf policy or, after solving,
// collapses when a rare off-policy sample meets a saturated baseline. The
// norm clip bounds those late kicks, and the higher rate plus the wider
// layers speed up symmetry breaking. Every knob stays configurable.
struct TrainConfig {
  int iterations = 10000;
  int trials = 10;
  double learning_rate = 0.05;
  double grad_clip = 0.3;  // global L2 cap on the batch gradient; 0 disables
  double baseline_decay = 0.99;
  double temperature = 1.0;
  std::uint64_t seed = 0;
  int curve_stride = 100;      // reward-curve sampling interval
  int success_numberings = 5;  // distinct port numberings the greedy policy must solve
  std::vector<int> layer_dims = {32, 32};
  int readout_hidden = 0;  // 0: auto
};

// +1 iff the labeling selects exactly one leaf, else -1.
inline double reward_single_leaf(const Graph& g, const std::vector<int>& labels) {
  return verify_single_leaf(g, Labeling{labels}) ? 1.0 : -1.0;
}

struct Episode {
  const Graph* graph = nullptr;
  const PortNumbering* ports = nullptr;
  const FeatureMatrix* features = nullptr;
  std::vector<int> actions;
  double reward = 0.0;
};

// Gradient of (reward - baseline) * log pi(actions) with respect to every
// model parameter, via reverse mode through readout, layers, and the
// concatenation.
inline Model policy_gradient(const Policy& pol, const Episode& ep, double baseline) {
  const double adv = ep.reward - baseline;
  ForwardTape tape;
  const auto outs = model_forward(pol.model, *ep.graph, ep.ports, *ep.features, &tape);
  if (ep.actions.size() != outs.size()) throw ShapeError("episode actions != node count");
  std::vector<Eigen::VectorXd> dout(outs.size());
  for (std::size_t v = 0; v < outs.size(); ++v) {
    Eigen::VectorXd d = -policy_probs(pol, outs[v]);
    d[ep.actions[v]] += 1.0;
    dout[v] = (adv / pol.temperature) * d;
  }
  const PortNumbering* p = pol.model.kind == ModelKind::VVC ? ep.ports : nullptr;
  return model_backward(pol.model, *ep.graph, p, tape, dout);
}

inline double gradient_norm(const Model& m) {
  double s = 0.0;
  for_each_param(m, [&](double x) { s += x * x; });
  return std::sqrt(s);
}

// One policy-gradient ascent step over a batch: accumulate the per-episode
// gradients, cap the global norm, apply the update, then fold the batch mean
// reward into the moving-average baseline.
inline void reinforce_step(Policy& pol, const std::vector<Episode>& batch, double learning_rate,
                           double baseline_decay, double& baseline, double grad_clip = 0.0) {
  if (batch.empty()) throw InvalidParams("empty episode batch");
  if (!(learning_rate > 0.0)) throw InvalidParams("learning rate must be positive");
  Model grad = zeros_like(pol.model);
  double reward_sum = 0.0;
  for (const Episode& ep : batch) {
    reward_sum += ep.reward;
    axpy(1.0, policy_gradient(pol, ep, baseline), grad);
  }
  if (!all_finite(grad)) throw NumericalError("non-finite policy gradient");
  double step = learning_rate;
  if (grad_clip > 0.0) {
    const double n = gradient_norm(grad);
    if (n > grad_clip) step *= grad_clip / n;
  }
  axpy(step, grad, pol.model);
  baseline = baseline_decay * baseline + (1.0 - baseline_decay) * (reward_sum / static_cast<double>(batch.size()));
}

struct CurvePoint {
  int iteration = 0;
  double mean_reward = 0.0;
};

struct TrialResult {
  std::uint64_t seed = 0;
  bool success = false;
  std::vector<CurvePoint> curve;
  Model final_model;
};

struct TrainReport {
  ModelKind kind = ModelKind::VVC;
  TrainConfig config;
  std::vector<TrialResult> trials;
  int successes() const {
    int s = 0;
    for (const auto& t : trials) s += t.success ? 1 : 0;
    return s;
  }
};

// Greedy policy must pick exactly one leaf under every given numbering.
inline bool greedy_solves_single_leaf(const Policy& pol, const Graph& g, const FeatureMatrix& x,
                                      const std::vector<PortNumbering>& numberings) {
  for (const auto& p : numberings)
    if (!verify_single_leaf(g, Labeling{greedy_actions(pol, g, p, x)})) return false;
  return true;
}

// Single-leaf training on the four-node star (the same graph is used for
// training and evaluation). Each trial reinitializes the model from its own
// seed and runs `iterations` single-episode updates. Success is recomputed
// from a serialized checkpoint, never trusted from the loop, and requires
// the greedy policy to solve the task under several distinct numberings.
inline TrainReport train(const TrainConfig& cfg, ModelKind kind) {
  if (cfg.trials < 1) throw InvalidParams("trials must be >= 1");
  if (cfg.iterations < 0) throw InvalidParams("iterations must be >= 0");
  const Graph g = make_star(3);
  const PortNumbering ports = consistent_port_numbering(g);
  const int delta = g.max_degree();
  const FeatureMatrix x = node_features(g, delta, FeatureSpec::Degree);
  const auto test_ports = distinct_port_numberings(g, cfg.success_numberings, cfg.seed ^ 0x9e3779b97f4a7c15ull);

  TrainReport report;
  report.kind = kind;
  report.config = cfg;
  Rng master(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t trial_seed = master.next_u64();
    Rng rng(trial_seed);
    ModelConfig mc;
    mc.kind = kind;
    mc.delta = delta;
    mc.feature_dim = delta;
    mc.layer_dims = cfg.layer_dims;
    mc.readout_hidden = cfg.readout_hidden;
    mc.num_labels = 2;
    Policy pol{make_model(mc, rng), cfg.temperature};
    double baseline = 0.0;
    std::vector<CurvePoint> curve;
    double window = 0.0;
    int window_n = 0;
    for (int it = 1; it <= cfg.iterations; ++it) {
      const ActionSample s = sample_actions(pol, g, ports, x, rng);
      const double r = reward_single_leaf(g, s.labels);
      reinforce_step(pol, {Episode{&g, &ports, &x, s.labels, r}}, cfg.learning_rate, cfg.baseline_decay,
                     baseline, cfg.grad_clip);
      window += r;
      ++window_n;
      if (cfg.curve_stride > 0 && it % cfg.curve_stride == 0) {
        curve.push_back({it, window / window_n});
        window = 0.0;
        window_n = 0;
      }
    }
    Policy frozen{model_from_json(model_to_json(pol.model)), cfg.temperature};
    const bool success = greedy_solves_single_leaf(frozen, g, x, test_ports);
    report.trials.push_back({trial_seed, success, std::move(curve), std::move(frozen.model)});
  }
  return report;
}

}  // namespace portgnn
