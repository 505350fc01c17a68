#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "cochange/entropy.hpp"
#include "cochange/error.hpp"
#include "cochange/graph.hpp"
#include "test_support.hpp"

namespace cochange {
namespace {

using testing::make_commit;

TEST(BuildGraph, ToyHistory) {
  const auto g = build_graph(testing::toy_commits());
  EXPECT_EQ(g.nodes(), (std::set<std::string>{"A", "B", "C", "D"}));
  ASSERT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.edges().at(make_edge("A", "C")), 9u);
  EXPECT_EQ(g.edges().at(make_edge("D", "A")), 1u);
  EXPECT_EQ(g.edges().at(make_edge("C", "D")), 1u);
  EXPECT_EQ(g.edges().at(make_edge("B", "D")), 1u);
}

TEST(BuildGraph, SingleFileCommitHasNoEdges) {
  const auto g = build_graph({make_commit("a", 0, "x", {"X"})});
  EXPECT_EQ(g.nodes().size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(degree(g, "X"), 0u);
  EXPECT_TRUE(build_graph({}).nodes().empty());
}

TEST(BuildGraph, ThreeFileCommitIsATriangle) {
  const auto g = build_graph({make_commit("a", 0, "x", {"X", "Y", "Z"})});
  ASSERT_EQ(g.edge_count(), 3u);
  for (const auto& [edge, count] : g.edges()) {
    EXPECT_LT(edge.first, edge.second);
    EXPECT_EQ(count, 1u);
  }
  const auto p = cochange_probabilities(g).probabilities();
  for (const auto& [f, v] : p) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(Degree, ToyValuesAndUnknownNode) {
  const auto g = build_graph(testing::toy_commits());
  EXPECT_EQ(degree(g, "D"), 3u);
  EXPECT_EQ(degree(g, "B"), 1u);
  EXPECT_EQ(degree(g, "A"), 2u);
  EXPECT_THROW(degree(g, "Q"), LookupError);
  EXPECT_EQ(g.neighbors("D"), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(CochangeProbabilities, ToyGraphIsExact) {
  const auto d = cochange_probabilities(build_graph(testing::toy_commits()));
  EXPECT_EQ(d.total(), 8u);
  EXPECT_EQ(d.weights(), (std::map<std::string, std::uint64_t>{{"A", 2}, {"B", 1}, {"C", 2}, {"D", 3}}));
  EXPECT_DOUBLE_EQ(d.probability("A"), 0.25);
  EXPECT_DOUBLE_EQ(d.probability("B"), 0.125);
  EXPECT_DOUBLE_EQ(d.probability("D"), 0.375);
}

TEST(CochangeProbabilities, PathGraph) {
  const auto g = build_graph({make_commit("a", 0, "x", {"X", "Y"}), make_commit("b", 1, "x", {"Y", "Z"})});
  const auto p = cochange_probabilities(g).probabilities();
  EXPECT_DOUBLE_EQ(p.at("X"), 0.25);
  EXPECT_DOUBLE_EQ(p.at("Y"), 0.5);
  EXPECT_DOUBLE_EQ(p.at("Z"), 0.25);
}

TEST(CochangeProbabilities, IsolatedNodeGetsZero) {
  const auto g = build_graph({make_commit("a", 0, "x", {"X", "Y"}), make_commit("b", 1, "x", {"Solo"})});
  EXPECT_DOUBLE_EQ(cochange_probabilities(g).probability("Solo"), 0.0);
}

TEST(CochangeProbabilities, EdgelessGraphIsDegenerate) {
  const auto g = build_graph({make_commit("a", 0, "x", {"X"})});
  EXPECT_THROW(cochange_probabilities(g), DegenerateInputError);
  EXPECT_THROW(weighted_cochange_probabilities(g), DegenerateInputError);
}

TEST(WeightedCochangeProbabilities, ToyMatchesChangeProbabilities) {
  const auto d = weighted_cochange_probabilities(build_graph(testing::toy_commits()));
  EXPECT_EQ(d.weights(), (std::map<std::string, std::uint64_t>{{"A", 10}, {"B", 1}, {"C", 10}, {"D", 3}}));
  EXPECT_EQ(d.total(), 24u);
}

TEST(WeightedCochangeProbabilities, SingleEdgeAnyWeight) {
  for (int w = 1; w <= 5; ++w) {
    std::vector<Commit> commits;
    for (int i = 0; i < w; ++i) commits.push_back(make_commit(std::to_string(i), i, "x", {"U", "V"}));
    const auto p = weighted_cochange_probabilities(build_graph(commits)).probabilities();
    EXPECT_DOUBLE_EQ(p.at("U"), 0.5);
    EXPECT_DOUBLE_EQ(p.at("V"), 0.5);
  }
}

TEST(WeightedCochangeProbabilities, Star) {
  const auto g = build_graph({make_commit("a", 0, "x", {"H", "L1"}), make_commit("b", 1, "x", {"H", "L2"}),
                              make_commit("c", 2, "x", {"H", "L3"})});
  const auto p = weighted_cochange_probabilities(g).probabilities();
  EXPECT_DOUBLE_EQ(p.at("H"), 0.5);
  for (const char* leaf : {"L1", "L2", "L3"}) EXPECT_DOUBLE_EQ(p.at(leaf), 1.0 / 6.0);
}

TEST(GraphProperties, HandshakeAndNormalization) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto commits = testing::random_commits(rng, 8, 15, 1, 5);
    const auto g = build_graph(commits);
    std::uint64_t degree_sum = 0;
    for (const auto& n : g.nodes()) degree_sum += g.degree(n);
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
    if (g.edge_count() == 0) continue;
    for (const auto& d : {cochange_probabilities(g), weighted_cochange_probabilities(g)}) {
      double sum = 0.0;
      for (const auto& [f, p] : d.probabilities()) sum += p;
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(GraphProperties, BuildIsOrderIndependent) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto commits = testing::random_commits(rng, 8, 15, 1, 5);
    const auto g = build_graph(commits);
    std::shuffle(commits.begin(), commits.end(), rng);
    for (auto& c : commits) std::shuffle(c.changes.begin(), c.changes.end(), rng);
    EXPECT_EQ(build_graph(commits), g);
  }
}

TEST(GraphProperties, WeightedEqualsChangeWhenEveryCommitTouchesTwoFiles) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto commits = testing::random_commits(rng, 8, 20, 2, 2);
    const auto weighted = weighted_cochange_probabilities(build_graph(commits));
    EXPECT_TRUE(weighted.same_rationals(change_probabilities(commits)));
  }
}

TEST(GraphProperties, WeightedDivergesWithWiderCommits) {
  // A three-file commit adds 2 to each member's weighted degree but only 1 touch.
  const std::vector<Commit> commits{make_commit("a", 0, "x", {"X", "Y", "Z"}),
                                    make_commit("b", 1, "x", {"X", "Y"})};
  EXPECT_FALSE(weighted_cochange_probabilities(build_graph(commits))
                   .same_rationals(change_probabilities(commits)));
}

TEST(EdgeList, SortedCsv) {
  std::ostringstream out;
  write_edge_list(out, build_graph(testing::toy_commits()));
  EXPECT_EQ(out.str(), "file_a,file_b,count\nA,C,9\nA,D,1\nB,D,1\nC,D,1\n");
}

}  // namespace
}  // namespace cochange
