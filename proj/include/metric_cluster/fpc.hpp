#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliques.hpp"
#include "distance_matrix.hpp"
#include "enumeration.hpp"
#include "graph.hpp"

namespace metric_cluster {

/// w0(root) = 0 and w0(v) = w({root, v}) otherwise; defined when the root dominates.
struct RootLabeling {
  std::vector<Rational> label;          // indexed by vertex
  bool injective = true;
  std::optional<VertexPair> duplicate;  // first pair (u < v) sharing a label
};

namespace detail {

inline std::optional<VertexIndex> first_non_neighbor_of_root(const WeightedRootedGraph& g) {
  for (VertexIndex v = 0; v < g.size(); ++v)
    if (v != g.root() && !g.adjacent(g.root(), v)) return v;
  return std::nullopt;
}

inline void require_dominating_root(const WeightedRootedGraph& g) {
  if (auto v = first_non_neighbor_of_root(g))
    throw PreconditionFailed("root '" + g.name(g.root()) + "' is not dominating: not adjacent to '" + g.name(*v) +
                             "'");
}

}  // namespace detail

inline RootLabeling root_labeling(const WeightedRootedGraph& g) {
  detail::require_dominating_root(g);
  RootLabeling out;
  out.label.resize(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v)
    out.label[v] = v == g.root() ? Rational(0) : g.weight(g.root(), v);
  for (VertexIndex u = 0; u < g.size() && out.injective; ++u) {
    for (VertexIndex v = u + 1; v < g.size(); ++v) {
      if (out.label[u] == out.label[v]) {
        out.injective = false;
        out.duplicate = VertexPair{u, v};
        break;
      }
    }
  }
  return out;
}

enum class FpcFailure { RootNotDominating, LabelingNotInjective, CycleInequalityViolated, TightCycleNotClique };

inline const char* to_string(FpcFailure f) {
  switch (f) {
    case FpcFailure::RootNotDominating:
      return "RootNotDominating";
    case FpcFailure::LabelingNotInjective:
      return "LabelingNotInjective";
    case FpcFailure::CycleInequalityViolated:
      return "CycleInequalityViolated";
    case FpcFailure::TightCycleNotClique:
      return "TightCycleNotClique";
  }
  return "?";
}

/// Outcome of certify_fpc. A failing certificate always carries its witness:
///   RootNotDominating       pair = (root, v) with v not adjacent to the root
///   LabelingNotInjective    pair = (u, v) with w0(u) == w0(v)
///   CycleInequalityViolated cycle with 2 max w > sum w
///   TightCycleNotClique     tight cycle plus a missing_edge between two of its vertices
struct FpcCertificate {
  bool pass = true;
  std::optional<FpcFailure> failure;
  std::optional<VertexPair> pair;
  std::optional<Cycle> cycle;
  std::optional<VertexPair> missing_edge;
};

/// Decides membership in the class of finite weighted rooted graphs that arise as clusters
/// of pretangent spaces at infinity:
///   (i)   the root dominates and w0 is injective,
///   (ii)  2 max w(e) <= sum w(e) on every cycle,
///   (iii) the vertex set of every tight cycle is a clique.
/// Conditions are checked in that order and the first failure is reported.
inline FpcCertificate certify_fpc(const WeightedRootedGraph& g, std::size_t cap = enumeration_cap()) {
  FpcCertificate cert;
  const auto fail = [&](FpcFailure f) {
    cert.pass = false;
    cert.failure = f;
    return cert;
  };
  if (auto v = detail::first_non_neighbor_of_root(g)) {
    cert.pair = VertexPair{g.root(), *v};
    return fail(FpcFailure::RootNotDominating);
  }
  auto labels = root_labeling(g);
  if (!labels.injective) {
    cert.pair = labels.duplicate;
    return fail(FpcFailure::LabelingNotInjective);
  }
  std::optional<Cycle> violated, loose_tight;
  std::optional<VertexPair> missing;
  for_each_cycle(
      g,
      [&](const Cycle& c) {
        if (violated) return;
        Rational excess = cycle_excess(g, c);
        if (excess > 0) {
          violated = c;
        } else if (excess == 0 && !loose_tight) {
          const auto& vs = c.vertices;
          for (std::size_t i = 0; i < vs.size() && !missing; ++i) {
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
              if (!g.adjacent(vs[i], vs[j])) {
                missing = VertexPair{std::min(vs[i], vs[j]), std::max(vs[i], vs[j])};
                break;
              }
            }
          }
          if (missing) loose_tight = c;
        }
      },
      cap);
  if (violated) {
    cert.cycle = violated;
    return fail(FpcFailure::CycleInequalityViolated);
  }
  if (loose_tight) {
    cert.cycle = loose_tight;
    cert.missing_edge = missing;
    return fail(FpcFailure::TightCycleNotClique);
  }
  return cert;
}

/// Weights 1 + j/(m+1), j = 1..m, over the edges in lexicographic order: pairwise distinct and
/// inside (1, 2), so every cycle is strictly metrizable and w0 is injective.
inline WeightedRootedGraph synthesize_weights(const WeightedRootedGraph& g) {
  detail::require_dominating_root(g);
  auto edges = g.edges();
  const Integer m1 = static_cast<unsigned long long>(edges.size() + 1);
  WeightedRootedGraph out = g;
  for (std::size_t j = 0; j < edges.size(); ++j)
    out = out.with_edge(edges[j].u, edges[j].v, Rational(1) + Rational(Integer(j + 1), m1));
  return out;
}

/// Complete graph over a finite metric space, weighted by the metric and rooted at a point
/// whose distances to the other points are pairwise distinct.
inline WeightedRootedGraph graph_from_metric_space(const DistanceMatrix& d, std::string_view root) {
  const std::size_t y = d.index(root);
  if (auto t = d.triangle_violation())
    throw PreconditionFailed("not a metric: triangle inequality fails for ('" + d.name((*t)[0]) + "','" +
                             d.name((*t)[1]) + "','" + d.name((*t)[2]) + "')");
  if (!d.is_metric()) throw PreconditionFailed("not a metric: two distinct points at distance 0");
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t z = x + 1; z < d.size(); ++z)
      if (d(y, x) == d(y, z))
        throw PreconditionFailed("points '" + d.name(x) + "' and '" + d.name(z) + "' are equidistant from '" +
                                 std::string(root) + "'");
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t z = x + 1; z < d.size(); ++z) edges.push_back({d.name(x), d.name(z), d(x, z)});
  return WeightedRootedGraph({d.names().begin(), d.names().end()}, root, edges);
}

/// Maximum number of maximal cliques in a graph on n >= 2 vertices:
/// 3^(n/3), 4*3^(floor(n/3)-1) or 2*3^floor(n/3) for n = 0, 1, 2 (mod 3).
inline std::uint64_t moon_moser_f(std::size_t n) {
  if (n < 2) throw InvalidInput("moon_moser_f needs n >= 2, got " + std::to_string(n));
  if (n > 121) throw LimitExceeded("moon_moser_f(" + std::to_string(n) + ") does not fit in 64 bits");
  const auto pow3 = [](std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= 3;
    return r;
  };
  switch (n % 3) {
    case 0:
      return pow3(n / 3);
    case 1:
      return 4 * pow3(n / 3 - 1);
    default:
      return 2 * pow3(n / 3);
  }
}

struct CliqueBoundReport {
  std::size_t vertices = 0;
  std::size_t clique_count = 0;  // maximal cliques of g - root
  std::uint64_t bound = 0;
  bool holds = true;
  long long slack = 0;  // bound - count
};

/// Counts the pretangent spaces a cluster-shaped graph encodes (maximal cliques of g - root,
/// the empty subgraph counting as one) against 1 for |V| <= 2 and f(|V| - 1) otherwise.
inline CliqueBoundReport clique_bound_check(const WeightedRootedGraph& g) {
  detail::require_dominating_root(g);
  std::vector<VertexIndex> rest;
  for (VertexIndex v = 0; v < g.size(); ++v)
    if (v != g.root()) rest.push_back(v);
  CliqueBoundReport r;
  r.vertices = g.size();
  r.clique_count = rest.empty() ? 1 : maximal_cliques(g, rest).size();
  r.bound = g.size() <= 2 ? 1 : moon_moser_f(g.size() - 1);
  r.holds = r.clique_count <= r.bound;
  r.slack = static_cast<long long>(r.bound) - static_cast<long long>(r.clique_count);
  return r;
}

}  // namespace metric_cluster
