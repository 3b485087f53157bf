#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "portgnn/io.hpp"
#include "portgnn/policy.hpp"
#include "portgnn/train.hpp"
#include "support/test_util.hpp"

namespace {

using namespace portgnn;
using test_util::degree_features;
using test_util::random_model;

TEST(Softmax, RowsSumToOne) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd logits(rng.uniform_int(1, 6));
    for (Eigen::Index k = 0; k < logits.size(); ++k) logits[k] = rng.uniform(-30.0, 30.0);
    const Eigen::VectorXd p = softmax(logits);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(Softmax, SaturatedLogitsPinTheSample) {
  const Eigen::VectorXd p = softmax(Eigen::Vector2d(1e6, 0.0));
  Rng rng(11);
  int first = 0;
  for (int i = 0; i < 10000; ++i)
    if (sample_categorical(p, rng) == 0) ++first;
  EXPECT_GE(first, 9990);
}

TEST(SampleActions, UniformPolicyLogProb) {
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  Policy pol{zeros_like(random_model(ModelKind::VVC, 3, 3, {8, 8}, 0)), 1.0};
  Rng rng(5);
  const ActionSample s = sample_actions(pol, g, p, x, rng);
  EXPECT_EQ(s.labels.size(), 4u);
  EXPECT_NEAR(s.log_prob, 4.0 * std::log(0.5), 1e-12);
}

TEST(SampleActions, SeedPinsTheSequence) {
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  const Policy pol{random_model(ModelKind::VVC, 3, 3, {8, 8}, 2), 1.0};
  Rng a(9), b(9);
  for (int i = 0; i < 50; ++i)
    EXPECT_EQ(sample_actions(pol, g, p, x, a).labels, sample_actions(pol, g, p, x, b).labels);
}

TEST(RewardSingleLeaf, Examples) {
  const Graph g = make_star(3);
  EXPECT_EQ(reward_single_leaf(g, {0, 1, 0, 0}), 1.0);
  EXPECT_EQ(reward_single_leaf(g, {1, 1, 0, 0}), -1.0);  // center plus a leaf
  EXPECT_EQ(reward_single_leaf(g, {0, 0, 0, 0}), -1.0);  // nothing selected
  EXPECT_THROW(reward_single_leaf(make_cycle(3), {0, 0, 0}), NotAStar);
}

TEST(ReinforceStep, ZeroAdvantageLeavesParamsUntouched) {
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  Policy pol{random_model(ModelKind::VVC, 3, 3, {8, 8}, 4), 1.0};
  const Model before = pol.model;
  double baseline = 1.0;  // equal to the episode reward
  reinforce_step(pol, {Episode{&g, &p, &x, {0, 1, 0, 0}, 1.0}}, 0.01, 0.99, baseline);
  EXPECT_TRUE(same_params(before, pol.model));
  EXPECT_DOUBLE_EQ(baseline, 1.0);  // 0.99 * 1 + 0.01 * 1
}

TEST(ReinforceStep, PositiveAdvantageRaisesLogProb) {
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Policy pol{random_model(ModelKind::VVC, 3, 3, {8, 8}, seed), 1.0};
    const std::vector<int> actions = {0, 1, 0, 0};
    const double before = action_log_prob(pol, g, p, x, actions);
    double baseline = 0.0;
    reinforce_step(pol, {Episode{&g, &p, &x, actions, 1.0}}, 1e-3, 0.99, baseline);
    const double after = action_log_prob(pol, g, p, x, actions);
    EXPECT_GT(after, before);
  }
}

TEST(ReinforceStep, Validation) {
  Policy pol{random_model(ModelKind::VVC, 3, 3, {4}, 1), 1.0};
  double baseline = 0.0;
  EXPECT_THROW(reinforce_step(pol, {}, 0.01, 0.99, baseline), InvalidParams);
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  EXPECT_THROW(reinforce_step(pol, {Episode{&g, &p, &x, {0, 1, 0, 0}, std::numeric_limits<double>::infinity()}},
                              0.01, 0.99, baseline),
               NumericalError);
}

// central finite differences of adv * log pi against the reverse-mode gradient
void expect_gradient_matches(ModelKind kind, std::uint64_t seed, double tol) {
  const Graph g = make_star(3);
  const PortNumbering p = consistent_port_numbering(g);
  const FeatureMatrix x = degree_features(g, 3);
  Policy pol{random_model(kind, 3, 3, {8, 8}, seed), 1.0};
  Rng rng(seed + 99);
  const ActionSample s = sample_actions(pol, g, p, x, rng);
  const double reward = reward_single_leaf(g, s.labels);
  const double baseline = 0.25;
  const Episode ep{&g, &p, &x, s.labels, reward};
  const double adv = reward - baseline;

  const Model grad = policy_gradient(pol, ep, baseline);
  std::vector<double> analytic;
  for_each_param(grad, [&](double v) { analytic.push_back(v); });

  const double h = 1e-5;
  const auto ptrs = param_ptrs(pol.model);
  double max_rel = 0.0;
  for (std::size_t i = 0; i < ptrs.size(); ++i) {
    const double keep = *ptrs[i];
    *ptrs[i] = keep + h;
    const double up = adv * action_log_prob(pol, g, p, x, s.labels);
    *ptrs[i] = keep - h;
    const double dn = adv * action_log_prob(pol, g, p, x, s.labels);
    *ptrs[i] = keep;
    const double fd = (up - dn) / (2.0 * h);
    const double rel = std::abs(analytic[i] - fd) / std::max({1.0, std::abs(analytic[i]), std::abs(fd)});
    max_rel = std::max(max_rel, rel);
  }
  EXPECT_LE(max_rel, tol) << "kind=" << to_string(kind) << " seed=" << seed;
}

TEST(PolicyGradient, MatchesFiniteDifferences) {
  expect_gradient_matches(ModelKind::VVC, 1, 1e-4);
  expect_gradient_matches(ModelKind::VVC, 2, 1e-4);
  expect_gradient_matches(ModelKind::MB, 3, 1e-4);
  expect_gradient_matches(ModelKind::SB, 4, 1e-4);
}

TEST(Train, BroadcastPoliciesNeverSolveStars) {
  // independent of any training: identical leaf embeddings force identical
  // greedy leaf labels
  const Graph g = make_star(3);
  const FeatureMatrix x = degree_features(g, 3);
  const auto ports = distinct_port_numberings(g, 5, 7);
  for (const ModelKind kind : {ModelKind::MB, ModelKind::SB}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Policy pol{random_model(kind, 3, 3, {8, 8}, seed), 1.0};
      EXPECT_FALSE(greedy_solves_single_leaf(pol, g, x, ports));
    }
  }
}

TEST(Train, ZeroIterationsStillWellFormed) {
  TrainConfig cfg;
  cfg.iterations = 0;
  cfg.trials = 3;
  cfg.seed = 1;
  const TrainReport report = train(cfg, ModelKind::VVC);
  EXPECT_EQ(report.trials.size(), 3u);
  for (const auto& t : report.trials) {
    EXPECT_TRUE(t.curve.empty());
    EXPECT_NO_THROW(validate_shapes(t.final_model));
  }
  EXPECT_EQ(train_report_to_json(report).at("trials").size(), 3u);
}

TEST(Train, IdenticalConfigGivesIdenticalReport) {
  TrainConfig cfg;
  cfg.iterations = 40;
  cfg.trials = 2;
  cfg.seed = 123;
  cfg.curve_stride = 10;
  const TrainReport a = train(cfg, ModelKind::VVC);
  const TrainReport b = train(cfg, ModelKind::VVC);
  EXPECT_EQ(train_report_to_json(a).dump(), train_report_to_json(b).dump());
}

TEST(Train, ReportCountsSuccesses) {
  TrainReport r;
  r.trials.push_back({0, true, {}, Model{}});
  r.trials.push_back({1, false, {}, Model{}});
  r.trials.push_back({2, true, {}, Model{}});
  EXPECT_EQ(r.successes(), 2);
}

}  // namespace
