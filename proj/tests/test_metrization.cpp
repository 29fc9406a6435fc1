#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace metric_cluster;

namespace {

WeightedRootedGraph cycle4(Rational a, Rational b, Rational c, Rational k) {
  return WeightedRootedGraph({"v1", "v2", "v3", "v4"}, "v1",
                             {{"v1", "v2", a}, {"v2", "v3", b}, {"v3", "v4", c}, {"v4", "v1", k}});
}

WeightedRootedGraph triangle(Rational a, Rational b, Rational c) {
  return WeightedRootedGraph({"a", "b", "c"}, "a", {{"a", "b", a}, {"b", "c", b}, {"c", "a", c}});
}

}  // namespace

TEST(ShortestPaths, MatchesFloydWarshall) {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = oracle::random_connected(rng, 1 + trial % 8, 0.35);
    auto d = shortest_path_metric(g);
    auto fw = oracle::floyd_warshall(g);
    for (VertexIndex u = 0; u < g.size(); ++u)
      for (VertexIndex v = 0; v < g.size(); ++v) EXPECT_EQ(d(u, v), *fw[u][v]);
    EXPECT_TRUE(oracle::is_pseudometric(d));
  }
}

TEST(ShortestPaths, RequiresConnectedGraph) {
  WeightedRootedGraph g({"a", "b"}, "a");
  EXPECT_THROW(shortest_path_metric(g), DisconnectedGraph);
}

TEST(Metrizability, TriangleWithWitness) {
  auto g = triangle(1, 1, 3);
  auto v = check_metrizable(g);
  EXPECT_EQ(v.classification, Metrizability::NotPseudometrizable);
  ASSERT_TRUE(v.violating_cycle);
  auto ws = cycle_weights(g, *v.violating_cycle);
  EXPECT_GT(2 * max_of(ws), sum_of(ws));
  EXPECT_EQ(check_metrizable(triangle(1, 2, 3)).classification, Metrizability::Metrizable);
}

TEST(Metrizability, ZeroWeightIsOnlyPseudometrizable) {
  auto v = check_metrizable(triangle(0, 2, 2));
  EXPECT_EQ(v.classification, Metrizability::PseudometrizableOnly);
  ASSERT_TRUE(v.zero_edge);
  EXPECT_EQ(*v.zero_edge, (VertexPair{0, 1}));
  EXPECT_EQ(check_metrizable(triangle(0, 1, 2)).classification, Metrizability::NotPseudometrizable);
}

TEST(Metrizability, AgreesWithAllCyclesCheck) {
  oracle::Rng rng(8);
  int negatives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto g = oracle::random_connected(rng, 2 + trial % 6, 0.5);
    auto got = check_metrizable(g).classification;
    EXPECT_EQ(got, oracle::classify(g));
    negatives += got != Metrizability::Metrizable;
  }
  EXPECT_GT(negatives, 10);
}

TEST(Interval, FourCycleWithDistinctWeights) {
  auto g = cycle4(1, 2, 3, 4);
  EXPECT_EQ(admissible_interval(g, g.index("v2"), g.index("v4")), (IntervalQ{3, 5}));
  EXPECT_EQ(admissible_interval(g, g.index("v1"), g.index("v3")), (IntervalQ{1, 3}));
  auto d = shortest_path_metric(g);
  EXPECT_EQ(d.at("v1", "v3"), 3);
  EXPECT_EQ(d.at("v2", "v4"), 5);
}

TEST(Interval, TightFourCycleForcesBothDiagonals) {
  auto g = cycle4(1, 1, 1, 3);
  EXPECT_EQ(check_metrizable(g).classification, Metrizability::Metrizable);
  EXPECT_EQ(admissible_interval(g, 0, 2), (IntervalQ{2, 2}));
  EXPECT_EQ(admissible_interval(g, 1, 3), (IntervalQ{2, 2}));
  EXPECT_EQ(unique_pairs(g), (std::vector<VertexPair>{{0, 2}, {1, 3}}));
  auto h = hat_completion(g);
  EXPECT_EQ(h.weight(0, 2), 2);
  EXPECT_EQ(h.weight(1, 3), 2);
  EXPECT_EQ(h.edge_count(), 6u);
}

TEST(Interval, StarOfTwoLeaves) {
  WeightedRootedGraph g({"r", "u", "v"}, "r", {{"r", "u", Rational(1)}, {"r", "v", Rational(5)}});
  EXPECT_EQ(admissible_interval(g, g.index("u"), g.index("v")), (IntervalQ{4, 6}));
}

TEST(Interval, Preconditions) {
  auto g = cycle4(1, 2, 3, 4);
  EXPECT_THROW(admissible_interval(g, 0, 1), PreconditionFailed);
  EXPECT_THROW(admissible_interval(g, 0, 0), InvalidInput);
  EXPECT_THROW(admissible_interval(cycle4(1, 1, 1, 5), 0, 2), PreconditionFailed);
}

TEST(Interval, AgreesWithBruteForcePaths) {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = trial % 2 ? oracle::random_line_subgraph(rng, 3 + trial % 5, 0.3) : oracle::random_connected(rng, 3 + trial % 5, 0.3);
    if (check_metrizable(g).classification != Metrizability::Metrizable) continue;
    for (auto [u, v] : g.non_edges()) {
      auto i = admissible_interval(g, u, v);
      EXPECT_EQ(i, oracle::interval(g, u, v));
      EXPECT_EQ(i.degenerate(), oracle::forced_by_tight_cycle(g, u, v));
    }
  }
}

TEST(Extend, InsideAndOutsideTheInterval) {
  auto g = cycle4(1, 2, 3, 4);
  auto v2 = g.index("v2"), v4 = g.index("v4");
  for (Rational t : {Rational(3), Rational(4), Rational(5)}) {
    auto d = extend_metric(g, v2, v4, t);
    EXPECT_EQ(d(v2, v4), t);
    for (const auto& e : g.edges()) EXPECT_EQ(d(e.u, e.v), e.weight);
    EXPECT_TRUE(oracle::is_pseudometric(d));
  }
  EXPECT_THROW(extend_metric(g, v2, v4, Rational(6)), PreconditionFailed);
  EXPECT_THROW(extend_metric(g, v2, v4, Rational(5, 2)), PreconditionFailed);
  EXPECT_THROW(extend_metric(g, v2, v4, Rational(0)), PreconditionFailed);
}

TEST(Completion, IsSinglePass) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_line_subgraph(rng, 4 + trial % 3, 0.2);
    auto h = hat_completion(g);
    for (auto [u, v] : unique_pairs(g)) EXPECT_EQ(h.weight(u, v), shortest_path_metric(g)(u, v));
    EXPECT_EQ(h.edge_count(), g.edge_count() + unique_pairs(g).size());
    EXPECT_EQ(shortest_path_metric(h), shortest_path_metric(g));
  }
}

TEST(Embedding, CircleUsesMinorArcs) {
  auto g = cycle4(1, 2, 3, 4);
  auto e = embed_cycle_on_circle(g, cycle_of(g));
  EXPECT_EQ(e.circumference, 10);
  EXPECT_EQ(e.positions, (std::vector<Rational>{0, 1, 3, 6}));
  EXPECT_EQ(e.metric.at("v1", "v3"), 3);
  EXPECT_EQ(e.metric.at("v2", "v4"), 5);
  EXPECT_EQ(e.metric.at("v1", "v4"), 4);
  EXPECT_THROW(embed_cycle_on_circle(cycle4(1, 1, 1, 5), cycle_of(cycle4(1, 1, 1, 5))), PreconditionFailed);
}

TEST(Embedding, TightCycleUnfoldsOntoLine) {
  auto g = cycle4(1, 1, 1, 3);
  auto e = embed_tight_cycle_on_line(g, cycle_of(g));
  std::map<std::string, Rational> x;
  for (std::size_t i = 0; i < e.order.size(); ++i) x[g.name(e.order[i])] = e.coordinates[i];
  EXPECT_EQ(x["v4"], 0);
  EXPECT_EQ(x["v3"], 1);
  EXPECT_EQ(x["v2"], 2);
  EXPECT_EQ(x["v1"], 3);
  for (const auto& edge : g.edges()) EXPECT_EQ(e.metric(e.metric.index(g.name(edge.u)), e.metric.index(g.name(edge.v))), edge.weight);
  EXPECT_TRUE(is_between(e.metric, "v1", "v2", "v4"));
  EXPECT_TRUE(is_between(e.metric, "v1", "v3", "v4"));
  EXPECT_TRUE(is_between(e.metric, "v2", "v3", "v4"));
  EXPECT_THROW(embed_tight_cycle_on_line(cycle4(1, 2, 3, 4), cycle_of(cycle4(1, 2, 3, 4))), PreconditionFailed);
}

TEST(Embedding, CycleOfRejectsNonCycles) {
  WeightedRootedGraph path({"a", "b", "c"}, "a", {{"a", "b", Rational(1)}, {"b", "c", Rational(1)}});
  EXPECT_THROW(cycle_of(path), InvalidInput);
}
