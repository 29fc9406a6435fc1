#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "cliques.hpp"
#include "enumeration.hpp"
#include "graph.hpp"

namespace metric_cluster {

/// Bijection V(g1) -> V(g2): image[v] is the vertex of g2 that v maps to.
struct IsoMapping {
  std::vector<VertexIndex> image;
  friend bool operator==(const IsoMapping&, const IsoMapping&) = default;
};

/// How edge weights are compared when matching graphs.
struct WeightMatch {
  enum class Mode { Ignore, Exact, Relative };
  Mode mode = Mode::Exact;
  double relative_tolerance = 0.0;

  static WeightMatch ignore() { return {Mode::Ignore, 0.0}; }
  static WeightMatch exact() { return {Mode::Exact, 0.0}; }
  static WeightMatch relative(double tol) { return {Mode::Relative, tol}; }

  bool operator()(const Rational& a, const Rational& b) const {
    switch (mode) {
      case Mode::Ignore:
        return true;
      case Mode::Exact:
        return a == b;
      case Mode::Relative: {
        const double x = to_double(a), y = to_double(b);
        return std::fabs(x - y) <= relative_tolerance * std::max(std::fabs(x), std::fabs(y));
      }
    }
    return false;
  }
};

/// Root to root, edges to edges in both directions, and matching weights under `match`.
inline bool is_isomorphism(const WeightedRootedGraph& g1, const WeightedRootedGraph& g2, const IsoMapping& f,
                           WeightMatch match = WeightMatch::exact()) {
  const std::size_t n = g1.size();
  if (g2.size() != n || f.image.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (auto v : f.image) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  if (f.image[g1.root()] != g2.root()) return false;
  for (VertexIndex u = 0; u < n; ++u) {
    for (VertexIndex v = u + 1; v < n; ++v) {
      const auto& a = g1.weight_if_edge(u, v);
      const auto& b = g2.weight_if_edge(f.image[u], f.image[v]);
      if (a.has_value() != b.has_value()) return false;
      if (a && !match(*a, *b)) return false;
    }
  }
  return true;
}

/// Root to root, every edge onto an edge of g2 with a matching weight. Not necessarily injective.
inline bool is_weight_preserving_homomorphism(const WeightedRootedGraph& g1, const WeightedRootedGraph& g2,
                                              const std::vector<VertexIndex>& image,
                                              WeightMatch match = WeightMatch::exact()) {
  if (image.size() != g1.size()) return false;
  for (auto v : image)
    if (v >= g2.size()) return false;
  if (image[g1.root()] != g2.root()) return false;
  for (const auto& e : g1.edges()) {
    const VertexIndex a = image[e.u], b = image[e.v];
    if (a == b || !g2.adjacent(a, b) || !match(e.weight, g2.weight(a, b))) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::size_t> sorted_degrees(const WeightedRootedGraph& g) {
  std::vector<std::size_t> d;
  for (VertexIndex v = 0; v < g.size(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

// When the root dominates g1 and its edge weights are pairwise distinct, a weighted
// isomorphism must send every vertex to the unique vertex of g2 with the same root weight.
// Returns nullopt when the fast path does not apply; an empty image means "no isomorphism".
inline std::optional<IsoMapping> forced_by_root_labels(const WeightedRootedGraph& g1,
                                                       const WeightedRootedGraph& g2, WeightMatch match) {
  if (match.mode == WeightMatch::Mode::Ignore || !is_dominating(g1, g1.root())) return std::nullopt;
  const std::size_t n = g1.size();
  for (VertexIndex u = 0; u < n; ++u) {
    if (u == g1.root()) continue;
    for (VertexIndex v = u + 1; v < n; ++v) {
      if (v != g1.root() && match(g1.weight(g1.root(), u), g1.weight(g1.root(), v))) return std::nullopt;
    }
  }
  if (!is_dominating(g2, g2.root())) return IsoMapping{};
  IsoMapping f{std::vector<VertexIndex>(n)};
  f.image[g1.root()] = g2.root();
  for (VertexIndex u = 0; u < n; ++u) {
    if (u == g1.root()) continue;
    std::optional<VertexIndex> found;
    for (VertexIndex v = 0; v < n; ++v) {
      if (v == g2.root() || !match(g1.weight(g1.root(), u), g2.weight(g2.root(), v))) continue;
      if (found) return std::nullopt;  // ambiguous under tolerance: let the search decide
      found = v;
    }
    if (!found) return IsoMapping{};
    f.image[u] = *found;
  }
  return f;
}

inline bool extend_mapping(const WeightedRootedGraph& g1, const WeightedRootedGraph& g2, WeightMatch match,
                           std::vector<VertexIndex>& image, std::vector<char>& used, VertexIndex u) {
  const std::size_t n = g1.size();
  if (u == n) return true;
  for (VertexIndex c = 0; c < n; ++c) {
    if (used[c]) continue;
    if ((u == g1.root()) != (c == g2.root())) continue;
    if (g1.degree(u) != g2.degree(c)) continue;
    bool ok = true;
    for (VertexIndex p = 0; p < u && ok; ++p) {
      const auto& a = g1.weight_if_edge(p, u);
      const auto& b = g2.weight_if_edge(image[p], c);
      ok = a.has_value() == b.has_value() && (!a || match(*a, *b));
    }
    if (!ok) continue;
    image[u] = c;
    used[c] = 1;
    if (extend_mapping(g1, g2, match, image, used, u + 1)) return true;
    used[c] = 0;
  }
  return false;
}

}  // namespace detail

/// Rooted (optionally weighted) isomorphism g1 -> g2. Returns the lexicographically least
/// witness, compared as the sequence (f(v1), ..., f(vn)) over sorted vertices.
inline std::optional<IsoMapping> isomorphic(const WeightedRootedGraph& g1, const WeightedRootedGraph& g2,
                                            WeightMatch match, std::size_t cap = vertex_cap(kDefaultIsomorphismCap)) {
  if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  if (detail::sorted_degrees(g1) != detail::sorted_degrees(g2)) return std::nullopt;
  if (g1.degree(g1.root()) != g2.degree(g2.root())) return std::nullopt;

  if (auto forced = detail::forced_by_root_labels(g1, g2, match)) {
    if (forced->image.empty() || !is_isomorphism(g1, g2, *forced, match)) return std::nullopt;
    return forced;
  }

  require_within_cap(g1, cap, "isomorphism search");
  std::vector<VertexIndex> image(g1.size());
  std::vector<char> used(g1.size(), 0);
  if (!detail::extend_mapping(g1, g2, match, image, used, 0)) return std::nullopt;
  return IsoMapping{std::move(image)};
}

inline std::optional<IsoMapping> isomorphic(const WeightedRootedGraph& g1, const WeightedRootedGraph& g2,
                                            bool weighted, std::size_t cap = vertex_cap(kDefaultIsomorphismCap)) {
  return isomorphic(g1, g2, weighted ? WeightMatch::exact() : WeightMatch::ignore(), cap);
}

}  // namespace metric_cluster
