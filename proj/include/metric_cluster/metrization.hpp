#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "distance_matrix.hpp"
#include "enumeration.hpp"
#include "graph.hpp"

namespace metric_cluster {

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct ShortestPathTree {
  std::vector<std::optional<Rational>> distance;
  std::vector<std::optional<VertexIndex>> parent;

  /// Vertices from the source to `target`; empty when unreachable.
  Path path_to(VertexIndex target) const {
    if (!distance[target]) return {};
    Path p{target};
    while (parent[p.back()]) p.push_back(*parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
  }
};

/// Label-setting shortest paths from `source` with exact comparisons. `skip` removes one
/// edge from consideration (used for detour queries). Ties resolve toward smaller indices.
inline ShortestPathTree shortest_paths_from(const WeightedRootedGraph& g, VertexIndex source,
                                            std::optional<VertexPair> skip = std::nullopt) {
  const std::size_t n = g.size();
  ShortestPathTree t{std::vector<std::optional<Rational>>(n), std::vector<std::optional<VertexIndex>>(n)};
  std::vector<char> settled(n, 0);
  t.distance[source] = Rational(0);
  const auto skipped = [&](VertexIndex a, VertexIndex b) {
    return skip && ((skip->first == a && skip->second == b) || (skip->first == b && skip->second == a));
  };
  for (std::size_t round = 0; round < n; ++round) {
    std::optional<VertexIndex> u;
    for (VertexIndex v = 0; v < n; ++v)
      if (!settled[v] && t.distance[v] && (!u || *t.distance[v] < *t.distance[*u])) u = v;
    if (!u) break;
    settled[*u] = 1;
    for (VertexIndex v = 0; v < n; ++v) {
      if (settled[v] || !g.adjacent(*u, v) || skipped(*u, v)) continue;
      Rational cand = *t.distance[*u] + g.weight(*u, v);
      if (!t.distance[v] || cand < *t.distance[v]) {
        t.distance[v] = cand;
        t.parent[v] = *u;
      }
    }
  }
  return t;
}

/// The weighted shortest-path pseudometric d*_w of a connected graph.
inline DistanceMatrix shortest_path_metric(const WeightedRootedGraph& g) {
  require_connected(g);
  const std::size_t n = g.size();
  std::vector<Rational> d(n * n);
  for (VertexIndex s = 0; s < n; ++s) {
    auto t = shortest_paths_from(g, s);
    for (VertexIndex v = 0; v < n; ++v) d[s * n + v] = *t.distance[v];
  }
  return DistanceMatrix({g.names().begin(), g.names().end()}, d);
}

// ---------------------------------------------------------------------------
// Metrizability
// ---------------------------------------------------------------------------

enum class Metrizability { Metrizable, PseudometrizableOnly, NotPseudometrizable };

inline const char* to_string(Metrizability m) {
  switch (m) {
    case Metrizability::Metrizable:
      return "Metrizable";
    case Metrizability::PseudometrizableOnly:
      return "PseudometrizableOnly";
    case Metrizability::NotPseudometrizable:
      return "NotPseudometrizable";
  }
  return "?";
}

struct MetrizabilityVerdict {
  Metrizability classification = Metrizability::Metrizable;
  std::optional<Cycle> violating_cycle;  // NotPseudometrizable: 2 max > sum on this cycle
  std::optional<VertexPair> zero_edge;   // PseudometrizableOnly: an edge of weight 0
};

/// Rotates and reflects a cycle so that it starts at its smallest vertex and
/// vertices[1] < vertices.back().
inline Cycle canonical_cycle(Cycle c) {
  auto& vs = c.vertices;
  std::rotate(vs.begin(), std::min_element(vs.begin(), vs.end()), vs.end());
  if (vs.size() > 2 && vs[1] > vs.back()) std::reverse(vs.begin() + 1, vs.end());
  return c;
}

/// Decides metrizability by comparing every edge with its shortest detour: some cycle has
/// 2 max > sum iff some edge is heavier than the shortest path joining its ends in g - e.
inline MetrizabilityVerdict check_metrizable(const WeightedRootedGraph& g) {
  require_connected(g);
  MetrizabilityVerdict verdict;
  for (const auto& e : g.edges()) {
    auto t = shortest_paths_from(g, e.u, VertexPair{e.u, e.v});
    if (t.distance[e.v] && e.weight > *t.distance[e.v]) {
      verdict.classification = Metrizability::NotPseudometrizable;
      verdict.violating_cycle = canonical_cycle(Cycle{t.path_to(e.v)});
      return verdict;
    }
  }
  for (const auto& e : g.edges()) {
    if (e.weight == 0) {
      verdict.classification = Metrizability::PseudometrizableOnly;
      verdict.zero_edge = VertexPair{e.u, e.v};
      return verdict;
    }
  }
  return verdict;
}

namespace detail {

inline void require_metrizable(const WeightedRootedGraph& g) {
  auto v = check_metrizable(g);
  if (v.classification != Metrizability::Metrizable)
    throw PreconditionFailed(std::string("graph is not metrizable (") + to_string(v.classification) + ")");
}

inline void require_non_adjacent_pair(const WeightedRootedGraph& g, VertexIndex mu, VertexIndex nu) {
  if (mu >= g.size() || nu >= g.size()) throw InvalidInput("vertex index out of range");
  if (mu == nu) throw InvalidInput("pair must consist of distinct vertices");
  if (g.adjacent(mu, nu))
    throw PreconditionFailed("vertices '" + g.name(mu) + "' and '" + g.name(nu) + "' are adjacent");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Admissible distances for a non-adjacent pair
// ---------------------------------------------------------------------------

/// Closed interval [lo, hi] of exact rationals.
struct IntervalQ {
  Rational lo;
  Rational hi;
  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  bool degenerate() const { return lo == hi; }
  friend bool operator==(const IntervalQ&, const IntervalQ&) = default;
};

inline std::string to_string(const IntervalQ& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

namespace detail {

// Both bounds from one sweep over the simple mu-nu paths.
inline IntervalQ interval_by_paths(const WeightedRootedGraph& g, VertexIndex mu, VertexIndex nu) {
  Rational lo = 0;
  std::optional<Rational> hi;
  for_each_simple_path(g, mu, nu, [&](const Path& p) {
    auto ws = path_weights(g, p);
    Rational sum = sum_of(ws);
    lo = std::max(lo, positive_part(2 * max_of(ws) - sum));
    if (!hi || sum < *hi) hi = sum;
  });
  return {lo, *hi};
}

}  // namespace detail

/// The range of values d(mu, nu) takes over all metrics d that agree with w on E(g):
/// lo = max over simple paths P of (2 max_P w - sum_P w)+, hi = min over P of sum_P w.
inline IntervalQ admissible_interval(const WeightedRootedGraph& g, VertexIndex mu, VertexIndex nu) {
  detail::require_non_adjacent_pair(g, mu, nu);
  detail::require_metrizable(g);
  return detail::interval_by_paths(g, mu, nu);
}

/// A metric agreeing with w on E(g) and equal to t on {mu, nu}: the shortest-path metric
/// of g with the extra edge {mu, nu} of weight t.
inline DistanceMatrix extend_metric(const WeightedRootedGraph& g, VertexIndex mu, VertexIndex nu,
                                    const Rational& t) {
  detail::require_non_adjacent_pair(g, mu, nu);
  if (t <= 0) throw PreconditionFailed("extension distance must be positive, got " + to_string(t));
  auto interval = admissible_interval(g, mu, nu);
  if (!interval.contains(t))
    throw PreconditionFailed("distance " + to_string(t) + " for {" + g.name(mu) + "," + g.name(nu) +
                             "} lies outside the admissible interval " + to_string(interval));
  return shortest_path_metric(g.with_edge(mu, nu, t));
}

/// Non-adjacent pairs whose distance is the same in every metric extension (lo == hi).
inline std::vector<VertexPair> unique_pairs(const WeightedRootedGraph& g) {
  detail::require_metrizable(g);
  std::vector<VertexPair> out;
  for (auto [u, v] : g.non_edges())
    if (detail::interval_by_paths(g, u, v).degenerate()) out.emplace_back(u, v);
  return out;
}

/// g plus every uniquely determined pair as an edge carrying its forced distance.
/// One pass; iterate explicitly if a fixed point is wanted.
inline WeightedRootedGraph hat_completion(const WeightedRootedGraph& g) {
  detail::require_metrizable(g);
  WeightedRootedGraph out = g;
  for (auto [u, v] : g.non_edges()) {
    auto interval = detail::interval_by_paths(g, u, v);
    if (interval.degenerate()) out = out.with_edge(u, v, interval.lo);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycle embeddings
// ---------------------------------------------------------------------------

/// The traversal of a graph that is itself a single cycle, starting at the smallest vertex
/// and continuing to its smaller neighbour.
inline Cycle cycle_of(const WeightedRootedGraph& g) {
  if (g.size() < 3 || g.edge_count() != g.size() || connected_components(g).size() != 1)
    throw InvalidInput("graph is not a cycle");
  for (VertexIndex v = 0; v < g.size(); ++v)
    if (g.degree(v) != 2) throw InvalidInput("graph is not a cycle: '" + g.name(v) + "' has degree != 2");
  Cycle c{{0}};
  VertexIndex prev = 0, cur = g.neighbors(0).front();
  while (cur != 0) {
    c.vertices.push_back(cur);
    auto nb = g.neighbors(cur);
    VertexIndex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return c;
}

struct CircleEmbedding {
  std::vector<VertexIndex> order;  // cycle traversal order
  Rational circumference;
  std::vector<Rational> positions;  // arc-length coordinate of order[i]
  DistanceMatrix metric;            // minor-arc distances
};

/// Places the cycle on a circle of circumference sum w(e) at cumulative arc lengths.
inline CircleEmbedding embed_cycle_on_circle(const WeightedRootedGraph& g, const Cycle& c) {
  if (!is_cycle_of(g, c)) throw InvalidInput("not a cycle of the graph");
  auto ws = cycle_weights(g, c);
  Rational total = sum_of(ws);
  if (2 * max_of(ws) > total)
    throw PreconditionFailed("cycle is not metrizable: 2*max = " + to_string(2 * max_of(ws)) + " > sum = " +
                             to_string(total));
  const std::size_t n = c.vertices.size();
  std::vector<Rational> pos(n);
  for (std::size_t i = 1; i < n; ++i) pos[i] = pos[i - 1] + ws[i - 1];
  std::vector<Rational> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = pos[i] > pos[j] ? Rational(pos[i] - pos[j]) : Rational(pos[j] - pos[i]);
      d[i * n + j] = std::min(s, Rational(total - s));
    }
  }
  return {c.vertices, total, pos, DistanceMatrix(vertex_names(g, c.vertices), d)};
}

struct LineEmbedding {
  std::vector<VertexIndex> order;
  std::vector<Rational> coordinates;  // coordinate of order[i]
  DistanceMatrix metric;              // |x_u - x_v|
};

/// Unfolds a tight cycle (2 max = sum) onto the line: the larger-named end of the heaviest
/// edge sits at 0 and the remaining path is laid out away from it.
inline LineEmbedding embed_tight_cycle_on_line(const WeightedRootedGraph& g, const Cycle& c) {
  if (!is_cycle_of(g, c)) throw InvalidInput("not a cycle of the graph");
  auto ws = cycle_weights(g, c);
  Rational total = sum_of(ws), heaviest = max_of(ws);
  if (2 * heaviest > total)
    throw PreconditionFailed("cycle is not metrizable: 2*max = " + to_string(2 * heaviest) + " > sum = " +
                             to_string(total));
  if (2 * heaviest < total)
    throw PreconditionFailed("cycle is not tight (2*max = " + to_string(2 * heaviest) + " < sum = " +
                             to_string(total) + "); use the circle embedding");
  const std::size_t n = c.vertices.size();
  const std::size_t k = static_cast<std::size_t>(std::find(ws.begin(), ws.end(), heaviest) - ws.begin());
  const std::size_t a = k, b = (k + 1) % n;  // heaviest edge joins order[a] and order[b]
  const bool forward = g.name(c.vertices[b]) > g.name(c.vertices[a]);
  std::vector<Rational> x(n);
  std::size_t i = forward ? b : a;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t j = forward ? (i + 1) % n : (i + n - 1) % n;
    const Rational& w = forward ? ws[i] : ws[j];
    x[j] = x[i] + w;
    i = j;
  }
  std::vector<Rational> d(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) d[p * n + q] = x[p] > x[q] ? Rational(x[p] - x[q]) : Rational(x[q] - x[p]);
  return {c.vertices, x, DistanceMatrix(vertex_names(g, c.vertices), d)};
}

}  // namespace metric_cluster
