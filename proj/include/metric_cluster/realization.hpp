#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "distance_matrix.hpp"
#include "fpc.hpp"
#include "graph.hpp"
#include "metrization.hpp"

namespace metric_cluster {

/// Scaling sequence r_n: n! by default, or base^(n^2) for faster separation.
struct ScalingRule {
  enum class Kind { Factorial, PowerOfSquare };
  Kind kind = Kind::Factorial;
  unsigned base = 2;

  static ScalingRule factorial() { return {Kind::Factorial, 0}; }
  static ScalingRule power_of_square(unsigned base) {
    if (base < 2) throw InvalidInput("power-of-square scaling needs base >= 2");
    return {Kind::PowerOfSquare, base};
  }

  std::string name() const { return kind == Kind::Factorial ? "factorial" : "power-square"; }

  Integer exact(std::size_t n) const {
    Integer r = 1;
    if (kind == Kind::Factorial) {
      for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned long long>(i);
    } else {
      r = boost::multiprecision::pow(Integer(base), static_cast<unsigned>(n * n));
    }
    return r;
  }

  friend bool operator==(const ScalingRule&, const ScalingRule&) = default;
};

namespace detail {

inline bool below_binary64_limit(const Integer& x) { return x > 0 && boost::multiprecision::msb(x) < 1023; }

inline void require_representable_scaling(const ScalingRule& rule, std::size_t depth) {
  if (!below_binary64_limit(rule.exact(depth)))
    throw LimitExceeded("scaling value r_" + std::to_string(depth) + " (" + rule.name() +
                        ") reaches 2^1023; reduce the depth");
}

}  // namespace detail

/// Recipe for a finite truncation of an unbounded space whose cluster at infinity is `graph`.
///
/// `family` holds 2m metrics agreeing with w on E(graph), m = number of non-edges: member i
/// puts the non-edge e_i at its lower target t1 and member i+m puts it at t2 = hi, so the two
/// differ there. Level n uses family[(n-1) mod period()]. A complete graph has the single
/// member d*_w.
struct RealizationPlan {
  WeightedRootedGraph graph;
  std::vector<VertexPair> non_edges;
  std::vector<IntervalQ> intervals;
  std::vector<Rational> lower_targets;
  std::vector<Rational> upper_targets;
  std::vector<DistanceMatrix> family;
  ScalingRule scaling;
  std::size_t depth = 0;
  std::vector<std::string> warnings;

  std::size_t dimension() const { return graph.size(); }
  std::size_t period() const { return family.size(); }
  std::size_t family_index(std::size_t level) const { return (level - 1) % period(); }
  /// Coordinate j of the embedding measures distances to the j-th vertex in name order.
  std::vector<std::string> coordinate_order() const { return {graph.names().begin(), graph.names().end()}; }
};

inline RealizationPlan build_plan(const WeightedRootedGraph& g, std::size_t depth,
                                  ScalingRule scaling = ScalingRule::factorial()) {
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  auto cert = certify_fpc(g);
  if (!cert.pass)
    throw PreconditionFailed(std::string("graph is not certified: ") + to_string(*cert.failure));
  detail::require_representable_scaling(scaling, depth);

  RealizationPlan plan{g, g.non_edges(), {}, {}, {}, {}, scaling, depth, {}};
  const std::size_t m = plan.non_edges.size();
  if (m == 0) {
    plan.family.push_back(shortest_path_metric(g));
    return plan;
  }
  std::vector<DistanceMatrix> lower, upper;
  for (auto [u, v] : plan.non_edges) {
    auto interval = admissible_interval(g, u, v);
    // Certified graphs have no uniquely determined pairs.
    if (interval.degenerate()) throw std::logic_error("certified graph with a degenerate interval");
    Rational t1 = interval.lo > 0 ? Rational((interval.lo + interval.hi) / 2) : Rational(interval.hi / 2);
    Rational t2 = interval.hi;
    plan.intervals.push_back(interval);
    plan.lower_targets.push_back(t1);
    plan.upper_targets.push_back(t2);
    lower.push_back(extend_metric(g, u, v, t1));
    upper.push_back(extend_metric(g, u, v, t2));
  }
  plan.family = std::move(lower);
  plan.family.insert(plan.family.end(), upper.begin(), upper.end());
  if (depth < 2 * m)
    plan.warnings.push_back("depth " + std::to_string(depth) + " is shorter than one metric-family period (" +
                            std::to_string(2 * m) + "); recovery cannot observe every oscillation");
  return plan;
}

// ---------------------------------------------------------------------------
// Point clouds
// ---------------------------------------------------------------------------

struct CloudPoint {
  std::string label;
  std::vector<double> coords;
  std::optional<std::vector<Rational>> exact;
};

struct CloudLevel {
  std::size_t n = 0;
  double r = 0.0;
  std::optional<Rational> r_exact;
  std::vector<CloudPoint> points;
};

/// Levels of a truncated unbounded space in sup-norm coordinates. Distances are
/// ||x - y||_inf and the basepoint p is `basepoint` (the origin for generated clouds).
/// `period` is set when the levels cycle through a metric family.
struct LeveledPointCloud {
  std::size_t dimension = 0;
  std::vector<double> basepoint;
  std::vector<CloudLevel> levels;
  std::optional<std::size_t> period;

  bool has_exact() const {
    for (const auto& level : levels) {
      if (!level.r_exact) return false;
      for (const auto& p : level.points)
        if (!p.exact) return false;
    }
    return !levels.empty();
  }
};

/// Level n holds the Kuratowski images K_n(v), coordinate j = d_n(v, v_j) - d_n(v_j, root),
/// with d_n = r_n * family[(n-1) mod period]. The root maps to the origin at every level.
inline LeveledPointCloud generate_cloud(const RealizationPlan& plan) {
  detail::require_representable_scaling(plan.scaling, plan.depth);
  const auto& g = plan.graph;
  const std::size_t k = plan.dimension();
  const VertexIndex root = g.root();
  LeveledPointCloud cloud;
  cloud.dimension = k;
  cloud.basepoint.assign(k, 0.0);
  cloud.period = plan.period();
  for (std::size_t n = 1; n <= plan.depth; ++n) {
    const Rational r(plan.scaling.exact(n));
    const DistanceMatrix& d = plan.family[plan.family_index(n)];
    CloudLevel level{n, to_double(r), r, {}};
    for (VertexIndex v = 0; v < k; ++v) {
      CloudPoint p{g.name(v), std::vector<double>(k), std::vector<Rational>(k)};
      for (VertexIndex j = 0; j < k; ++j) {
        Rational c = r * (d(v, j) - d(j, root));
        (*p.exact)[j] = c;
        p.coords[j] = to_double(c);
        if (!std::isfinite(p.coords[j])) throw LimitExceeded("coordinate overflow at level " + std::to_string(n));
      }
      level.points.push_back(std::move(p));
    }
    cloud.levels.push_back(std::move(level));
  }
  return cloud;
}

/// The line X = {0} U {x_n}, x_n = q^(n^2), scaled by r_n = sqrt(x_n x_{n+1}). Each level
/// carries the basepoint "p" and the point "x" = x_n. Every sequence of X has a vanishing
/// normalized distance to 0, so the cluster is a single vertex.
inline LeveledPointCloud single_point_space(std::size_t depth, unsigned q = 2) {
  if (q < 2) throw InvalidInput("single_point_space needs an integer base q >= 2");
  if (depth < 2) throw InvalidInput("single_point_space needs depth >= 2");
  const auto power = [&](std::size_t e) -> Integer { return boost::multiprecision::pow(Integer(q), static_cast<unsigned>(e)); };
  // r_N < 2^1023  <=>  r_N^2 = q^(2N^2+2N+1) < 2^2046
  if (boost::multiprecision::msb(power(2 * depth * depth + 2 * depth + 1)) >= 2046)
    throw LimitExceeded("scaling value r_" + std::to_string(depth) + " reaches 2^1023; reduce the depth");
  LeveledPointCloud cloud;
  cloud.dimension = 1;
  cloud.basepoint = {0.0};
  for (std::size_t n = 1; n <= depth; ++n) {
    Integer x = power(n * n);
    // r_n = sqrt(q^(n^2) q^((n+1)^2)) = q^(n^2+n) sqrt(q)
    double r = to_double(Rational(power(n * n + n))) * std::sqrt(static_cast<double>(q));
    CloudLevel level{n, r, std::nullopt, {}};
    level.points.push_back({"p", {0.0}, std::vector<Rational>{Rational(0)}});
    level.points.push_back({"x", {to_double(Rational(x))}, std::vector<Rational>{Rational(x)}});
    cloud.levels.push_back(std::move(level));
  }
  return cloud;
}

inline double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

inline Rational sup_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational diff = a[i] - b[i];
    m = std::max(m, diff < 0 ? Rational(-diff) : diff);
  }
  return m;
}

}  // namespace metric_cluster
