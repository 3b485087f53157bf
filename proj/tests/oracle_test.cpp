#include <gtest/gtest.h>

#include "portgnn/generate.hpp"
#include "portgnn/oracles.hpp"
#include "support/alt_solvers.hpp"

namespace {

using namespace portgnn;

TEST(MinDominatingSet, Examples) {
  EXPECT_EQ(min_dominating_set(make_star(3)), (NodeSet{1}));
  const NodeSet c6 = min_dominating_set(make_cycle(6));
  EXPECT_EQ(c6, (NodeSet{1, 4}));
  EXPECT_EQ(min_dominating_set(build_graph(1, {})), (NodeSet{1}));
}

TEST(MinVertexCover, Examples) {
  EXPECT_EQ(min_vertex_cover(make_cycle(3)).size(), 2u);
  const NodeSet p4 = min_vertex_cover(make_path(4));
  EXPECT_EQ(p4.size(), 2u);
  EXPECT_TRUE(check(Problem::VertexCover, make_path(4), p4));
  EXPECT_EQ(p4, (NodeSet{1, 3}));  // lexicographically smallest optimum
  EXPECT_TRUE(min_vertex_cover(build_graph(3, {})).empty());
}

TEST(MaxMatching, Examples) {
  EXPECT_EQ(max_matching(make_star(3)), (EdgeSet{{1, 2}}));
  EXPECT_EQ(max_matching(make_cycle(6)), (EdgeSet{{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_EQ(max_matching(make_path(4)), (EdgeSet{{1, 2}, {3, 4}}));
  EXPECT_TRUE(max_matching(build_graph(2, {})).empty());
}

TEST(Oracles, SizeCaps) {
  const Graph big = make_star(25);
  EXPECT_THROW(min_dominating_set(big), TooLarge);
  EXPECT_THROW(min_vertex_cover(big), TooLarge);
  EXPECT_THROW(max_matching(big), TooLarge);  // 25 edges
  EXPECT_NO_THROW(max_matching(make_star(24)));
}

TEST(Check, Examples) {
  const Graph star = make_star(3);
  EXPECT_TRUE(check(Problem::DominatingSet, star, NodeSet{1}));
  EXPECT_FALSE(check(Problem::DominatingSet, build_graph(4, {{1, 2}, {3, 4}}), NodeSet{1}));
  EXPECT_FALSE(check(Problem::VertexCover, make_cycle(3), NodeSet{1}));
  EXPECT_TRUE(check(Problem::VertexCover, make_cycle(3), NodeSet{1, 2}));
  EXPECT_FALSE(check(Problem::Matching, star, EdgeSet{{1, 2}, {1, 3}}));
  EXPECT_TRUE(check(Problem::Matching, star, EdgeSet{{1, 3}}));
  EXPECT_TRUE(check(Problem::Matching, star, EdgeSet{}));
}

TEST(Check, RejectsMalformedCandidates) {
  const Graph g = make_path(3);
  EXPECT_THROW(check(Problem::DominatingSet, g, NodeSet{0}), InvalidNode);
  EXPECT_THROW(check(Problem::DominatingSet, g, NodeSet{2, 1}), InvalidParams);
  EXPECT_THROW(check(Problem::DominatingSet, g, NodeSet{1, 1}), InvalidParams);
  EXPECT_THROW(check(Problem::Matching, g, EdgeSet{{1, 3}}), InvalidParams);  // non-edge
  EXPECT_THROW(check(Problem::Matching, g, NodeSet{1}), InvalidParams);
  EXPECT_THROW(check(Problem::VertexCover, g, EdgeSet{{1, 2}}), InvalidParams);
}

TEST(Oracles, LocalMinimality) {
  // dropping any element of a minimum solution breaks validity
  const Graph c6 = make_cycle(6);
  const NodeSet mds = min_dominating_set(c6);
  for (std::size_t drop = 0; drop < mds.size(); ++drop) {
    NodeSet s = mds;
    s.erase(s.begin() + static_cast<long>(drop));
    EXPECT_FALSE(check(Problem::DominatingSet, c6, s));
  }
  const Graph tri = make_cycle(3);
  const NodeSet vc = min_vertex_cover(tri);
  for (std::size_t drop = 0; drop < vc.size(); ++drop) {
    NodeSet s = vc;
    s.erase(s.begin() + static_cast<long>(drop));
    EXPECT_FALSE(check(Problem::VertexCover, tri, s));
  }
}

TEST(Baselines, AllNodesRatios) {
  const Graph star = make_star(3);
  EXPECT_EQ(approx_ratio(4, static_cast<long long>(min_dominating_set(star).size()), Sense::Min),
            Ratio::value(4, 1));
  const Graph tri = make_cycle(3);
  EXPECT_EQ(approx_ratio(3, static_cast<long long>(min_dominating_set(tri).size()), Sense::Min),
            Ratio::value(3, 1));
  const Graph edge = build_graph(2, {{1, 2}});
  EXPECT_EQ(approx_ratio(2, static_cast<long long>(min_dominating_set(edge).size()), Sense::Min),
            Ratio::value(2, 1));
}

TEST(Baselines, MatchingVcExamples) {
  EXPECT_EQ(matching_vc_baseline(make_path(4)), (NodeSet{1, 2, 3, 4}));  // tight ratio 2
  EXPECT_EQ(matching_vc_baseline(make_cycle(3)), (NodeSet{1, 2}));       // ratio 1
  EXPECT_EQ(matching_vc_baseline(make_star(3)), (NodeSet{1, 2}));        // ratio 2 against opt {1}
}

TEST(Baselines, MatchingVcIsAlwaysACover) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_bounded(12, 4, seed);
    EXPECT_TRUE(check(Problem::VertexCover, g, matching_vc_baseline(g)));
    EXPECT_TRUE(check(Problem::VertexCover, g, matching_vc_baseline(g, seed * 3 + 1)));
  }
}

TEST(Baselines, MatchingVcWithinTwiceOptimum) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed * 17 + 3);
    const int n = rng.uniform_int(4, 16);
    const Graph g = random_bounded(n, rng.uniform_int(2, 4), seed);
    const auto opt = min_vertex_cover(g);
    const auto greedy = matching_vc_baseline(g);
    ASSERT_FALSE(opt.empty());
    EXPECT_TRUE(approx_ratio(static_cast<long long>(greedy.size()), static_cast<long long>(opt.size()),
                             Sense::Min)
                    .leq(2));
  }
}

TEST(ApproxRatio, Examples) {
  EXPECT_EQ(approx_ratio(4, 1, Sense::Min), Ratio::value(4, 1));
  EXPECT_EQ(approx_ratio(2, 3, Sense::Max), Ratio::value(3, 2));
  EXPECT_TRUE(approx_ratio(0, 1, Sense::Max).infinite);
  EXPECT_THROW(approx_ratio(3, 0, Sense::Min), Undefined);
  EXPECT_THROW(approx_ratio(1, 0, Sense::Max), Undefined);
  EXPECT_EQ(approx_ratio(0, 0, Sense::Max), Ratio::value(1, 1));
  EXPECT_THROW(approx_ratio(-1, 1, Sense::Min), InvalidParams);
}

TEST(Ratio, ExactArithmetic) {
  EXPECT_EQ(Ratio::value(6, 4), Ratio::value(3, 2));
  EXPECT_EQ(Ratio::value(6, 4).str(), "3/2");
  EXPECT_EQ(Ratio::value(8, 2).str(), "4");
  EXPECT_EQ(Ratio::inf().str(), "inf");
  EXPECT_TRUE(Ratio::value(7, 2).leq(4));
  EXPECT_FALSE(Ratio::value(9, 2).leq(4));
  EXPECT_TRUE(Ratio::value(3, 2).leq(Ratio::value(2, 1)));
  EXPECT_TRUE(Ratio::value(3, 2).leq(Ratio::inf()));
  EXPECT_FALSE(Ratio::inf().leq(Ratio::value(100, 1)));
}

TEST(CrossValidation, ExhaustiveSmallGraphs) {
  // quick version up to n = 5; the acceptance suite covers n <= 7
  long graphs = 0;
  for (int n = 1; n <= 5; ++n) {
    oracle_check::for_each_connected_graph(n, [&](const Graph& g) {
      ++graphs;
      EXPECT_EQ(static_cast<int>(min_dominating_set(g).size()), oracle_check::mds_size_branch_and_bound(g));
      EXPECT_EQ(static_cast<int>(min_vertex_cover(g).size()), oracle_check::mvc_size_enumeration(g));
      EXPECT_EQ(static_cast<int>(max_matching(g).size()), oracle_check::matching_size_branch_and_bound(g));
      EXPECT_TRUE(check(Problem::DominatingSet, g, min_dominating_set(g)));
      EXPECT_TRUE(check(Problem::VertexCover, g, min_vertex_cover(g)));
      EXPECT_TRUE(check(Problem::Matching, g, max_matching(g)));
    });
  }
  EXPECT_EQ(graphs, 1 + 1 + 4 + 38 + 728);  // labeled connected graphs on 1..5 nodes
}

}  // namespace
