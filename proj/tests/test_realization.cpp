#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace metric_cluster;

namespace {

WeightedRootedGraph two_leaf_star() {
  return WeightedRootedGraph({"r", "u", "v"}, "r", {{"r", "u", Rational(1)}, {"r", "v", Rational(5)}});
}

Rational exact_sup(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, Rational(abs(a[i] - b[i])));
  return m;
}

}  // namespace

TEST(Scaling, FactorialAndPowerOfSquare) {
  EXPECT_EQ(ScalingRule::factorial().exact(5), 120);
  EXPECT_EQ(ScalingRule::factorial().exact(1), 1);
  EXPECT_EQ(ScalingRule::power_of_square(3).exact(2), 81);
  EXPECT_THROW(ScalingRule::power_of_square(1), InvalidInput);
}

TEST(Plan, TargetsForTwoLeafStar) {
  auto plan = build_plan(two_leaf_star(), 8);
  ASSERT_EQ(plan.non_edges.size(), 1u);
  EXPECT_EQ(plan.intervals[0], (IntervalQ{4, 6}));
  EXPECT_EQ(plan.lower_targets[0], 5);
  EXPECT_EQ(plan.upper_targets[0], 6);
  EXPECT_EQ(plan.period(), 2u);
  EXPECT_EQ(plan.family_index(1), 0u);
  EXPECT_EQ(plan.family_index(2), 1u);
  EXPECT_EQ(plan.family_index(3), 0u);
  EXPECT_EQ(plan.family[0].at("u", "v"), 5);
  EXPECT_EQ(plan.family[1].at("u", "v"), 6);
}

TEST(Plan, LowerTargetIsMidpoint) {
  WeightedRootedGraph g({"r", "a", "b", "c"}, "r",
                        {{"r", "a", Rational(2)}, {"r", "b", Rational(3)}, {"r", "c", Rational(4)}, {"a", "b", Rational(2)},
                         {"b", "c", Rational(2)}});
  ASSERT_TRUE(certify_fpc(g).pass);
  auto plan = build_plan(g, 8);
  ASSERT_EQ(plan.non_edges, (std::vector<VertexPair>{{g.index("a"), g.index("c")}}));
  // paths a-b-c (2,2) and a-r-c (2,4) give lo = max(0, 2) = 2, hi = 4
  EXPECT_EQ(plan.intervals[0], (IntervalQ{2, 4}));
  EXPECT_EQ(plan.lower_targets[0], 3);
  EXPECT_EQ(plan.upper_targets[0], 4);
}

TEST(Plan, FamilyAgreesOnEdgesAndSeparatesEveryNonEdge) {
  for (const auto& shape : oracle::dominated_shapes(5)) {
    auto g = synthesize_weights(shape);
    auto plan = build_plan(g, 12);
    const std::size_t m = plan.non_edges.size();
    ASSERT_EQ(plan.period(), m == 0 ? 1u : 2 * m);
    for (const auto& d : plan.family) {
      EXPECT_TRUE(d.is_metric());
      for (const auto& e : g.edges()) EXPECT_EQ(d(e.u, e.v), e.weight);
    }
    for (std::size_t i = 0; i < m; ++i) {
      auto [u, v] = plan.non_edges[i];
      EXPECT_NE(plan.family[i](u, v), plan.family[i + m](u, v));
      EXPECT_TRUE(plan.intervals[i].contains(plan.lower_targets[i]));
      EXPECT_GT(plan.lower_targets[i], 0);
    }
  }
}

TEST(Plan, RejectsUncertifiedGraphsAndWarnsOnShortDepth) {
  WeightedRootedGraph bad({"r", "a", "b"}, "r", {{"r", "a", Rational(1)}, {"r", "b", Rational(1)}});
  EXPECT_THROW(build_plan(bad, 8), PreconditionFailed);
  WeightedRootedGraph three({"r", "a", "b", "c"}, "r", {{"r", "a", Rational(1)}, {"r", "b", Rational(2)}, {"r", "c", Rational(3)}});
  auto plan = build_plan(three, 4);
  EXPECT_EQ(plan.period(), 6u);
  EXPECT_EQ(plan.warnings.size(), 1u);
  EXPECT_THROW(build_plan(three, 171), LimitExceeded);
  EXPECT_NO_THROW(build_plan(three, 170));
}

TEST(Cloud, LevelsAreScaledKuratowskiImages) {
  auto g = two_leaf_star();
  auto plan = build_plan(g, 7);
  auto cloud = generate_cloud(plan);
  ASSERT_EQ(cloud.levels.size(), 7u);
  EXPECT_EQ(cloud.period, 2u);
  EXPECT_TRUE(cloud.has_exact());
  for (const auto& level : cloud.levels) {
    const auto& d = plan.family[plan.family_index(level.n)];
    Rational r = *level.r_exact;
    EXPECT_EQ(r, Rational(ScalingRule::factorial().exact(level.n)));
    for (std::size_t i = 0; i < level.points.size(); ++i) {
      for (std::size_t j = 0; j < level.points.size(); ++j) {
        const auto& a = level.points[i];
        const auto& b = level.points[j];
        EXPECT_EQ(exact_sup(*a.exact, *b.exact), r * d.at(a.label, b.label));
      }
    }
    // the root sits at the origin
    for (const auto& p : level.points)
      if (p.label == "r") EXPECT_EQ(exact_sup(*p.exact, std::vector<Rational>(3)), 0);
  }
}

TEST(Cloud, DoublesTrackTheExactShadow) {
  auto cloud = generate_cloud(build_plan(synthesize_weights(oracle::dominated_shapes(5).back()), 16));
  for (const auto& level : cloud.levels)
    for (const auto& p : level.points)
      for (std::size_t k = 0; k < p.coords.size(); ++k) EXPECT_EQ(p.coords[k], to_double((*p.exact)[k]));
}

TEST(SinglePoint, GeometricPointsAndMidpointScales) {
  auto cloud = single_point_space(12);
  ASSERT_EQ(cloud.levels.size(), 12u);
  EXPECT_EQ(cloud.levels[0].points[1].coords[0], 2.0);
  EXPECT_EQ(cloud.levels[1].points[1].coords[0], 16.0);
  EXPECT_EQ(cloud.levels[2].points[1].coords[0], 512.0);
  EXPECT_DOUBLE_EQ(cloud.levels[0].r, std::sqrt(32.0));
  EXPECT_DOUBLE_EQ(cloud.levels[1].r, std::sqrt(8192.0));
  for (const auto& level : cloud.levels) {
    double x = level.points[1].coords[0];
    EXPECT_NEAR(level.r * level.r / (x * x), std::pow(2.0, 2.0 * level.n + 1), 1e-6 * std::pow(2.0, 2.0 * level.n + 1));
  }
  EXPECT_FALSE(cloud.period);
}

TEST(SinglePoint, GuardsAgainstOverflow) {
  EXPECT_NO_THROW(single_point_space(31));
  EXPECT_THROW(single_point_space(32), LimitExceeded);
  EXPECT_THROW(single_point_space(1), InvalidInput);
  EXPECT_THROW(single_point_space(5, 1), InvalidInput);
}

TEST(SupDistance, DoubleAndExact) {
  EXPECT_EQ(sup_distance(std::vector<double>{1, -2}, std::vector<double>{0, 1}), 3.0);
  EXPECT_EQ(sup_distance(std::vector<Rational>{Rational(1, 2)}, std::vector<Rational>{Rational(-1, 3)}), Rational(5, 6));
}
