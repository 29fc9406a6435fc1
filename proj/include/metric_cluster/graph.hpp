#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace metric_cluster {

/// Position of a vertex in the lexicographically sorted vertex list.
using VertexIndex = std::size_t;

/// A pair of vertex indices; constructors normalise to u < v where it matters.
using VertexPair = std::pair<VertexIndex, VertexIndex>;

struct WeightedEdge {
  VertexIndex u;
  VertexIndex v;
  Rational weight;
};

/// Simple loopless graph with exact non-negative edge weights and a root.
///
/// Vertices are opaque string tokens kept in lexicographic order, so index
/// order and name order coincide. Values are immutable after construction;
/// the `with_*` members return modified copies.
class WeightedRootedGraph {
 public:
  struct EdgeSpec {
    std::string u;
    std::string v;
    Rational weight;
  };

  WeightedRootedGraph(std::vector<std::string> vertices, std::string_view root,
                      const std::vector<EdgeSpec>& edges = {})
      : names_(std::move(vertices)) {
    std::sort(names_.begin(), names_.end());
    if (names_.empty()) throw InvalidInput("graph must have at least one vertex");
    if (std::adjacent_find(names_.begin(), names_.end()) != names_.end())
      throw InvalidInput("duplicate vertex '" + *std::adjacent_find(names_.begin(), names_.end()) + "'");
    weights_.assign(names_.size() * names_.size(), std::nullopt);
    root_ = index(root);
    for (const auto& e : edges) {
      VertexIndex a = index(e.u), b = index(e.v);
      if (a == b) throw InvalidInput("loop at vertex '" + e.u + "'");
      if (weights_[slot(a, b)]) throw InvalidInput("duplicate edge {" + e.u + "," + e.v + "}");
      if (e.weight < 0) throw InvalidInput("negative weight on edge {" + e.u + "," + e.v + "}");
      weights_[slot(a, b)] = e.weight;
      weights_[slot(b, a)] = e.weight;
    }
  }

  std::size_t size() const { return names_.size(); }
  std::span<const std::string> names() const { return names_; }
  const std::string& name(VertexIndex v) const { return names_.at(v); }
  VertexIndex root() const { return root_; }

  std::optional<VertexIndex> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<VertexIndex>(it - names_.begin());
  }

  VertexIndex index(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw InvalidInput("unknown vertex '" + std::string(name) + "'");
  }

  bool adjacent(VertexIndex u, VertexIndex v) const { return weights_[slot(u, v)].has_value(); }

  const std::optional<Rational>& weight_if_edge(VertexIndex u, VertexIndex v) const {
    return weights_[slot(u, v)];
  }

  const Rational& weight(VertexIndex u, VertexIndex v) const {
    const auto& w = weights_[slot(u, v)];
    if (!w) throw InvalidInput("no edge {" + name(u) + "," + name(v) + "}");
    return *w;
  }

  std::vector<VertexIndex> neighbors(VertexIndex u) const {
    std::vector<VertexIndex> out;
    for (VertexIndex v = 0; v < size(); ++v)
      if (adjacent(u, v)) out.push_back(v);
    return out;
  }

  std::size_t degree(VertexIndex u) const {
    std::size_t d = 0;
    for (VertexIndex v = 0; v < size(); ++v) d += adjacent(u, v) ? 1 : 0;
    return d;
  }

  /// Edges with u < v, in lexicographic order of (name(u), name(v)).
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    for (VertexIndex u = 0; u < size(); ++u)
      for (VertexIndex v = u + 1; v < size(); ++v)
        if (const auto& w = weights_[slot(u, v)]) out.push_back({u, v, *w});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (VertexIndex u = 0; u < size(); ++u)
      for (VertexIndex v = u + 1; v < size(); ++v) m += adjacent(u, v) ? 1 : 0;
    return m;
  }

  /// Unordered non-adjacent pairs {u, v}, u < v, in lexicographic order.
  std::vector<VertexPair> non_edges() const {
    std::vector<VertexPair> out;
    for (VertexIndex u = 0; u < size(); ++u)
      for (VertexIndex v = u + 1; v < size(); ++v)
        if (!adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  /// Adds the edge, or replaces its weight when it already exists.
  WeightedRootedGraph with_edge(VertexIndex u, VertexIndex v, const Rational& w) const {
    if (u == v) throw InvalidInput("loop at vertex '" + name(u) + "'");
    if (w < 0) throw InvalidInput("negative weight on edge {" + name(u) + "," + name(v) + "}");
    WeightedRootedGraph g = *this;
    g.weights_[slot(u, v)] = w;
    g.weights_[slot(v, u)] = w;
    return g;
  }

  WeightedRootedGraph without_edge(VertexIndex u, VertexIndex v) const {
    WeightedRootedGraph g = *this;
    g.weights_[slot(u, v)].reset();
    g.weights_[slot(v, u)].reset();
    return g;
  }

  WeightedRootedGraph with_root(VertexIndex r) const {
    if (r >= size()) throw InvalidInput("root index out of range");
    WeightedRootedGraph g = *this;
    g.root_ = r;
    return g;
  }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (const auto& e : edges()) out.push_back({name(e.u), name(e.v), e.weight});
    return out;
  }

  friend bool operator==(const WeightedRootedGraph& a, const WeightedRootedGraph& b) {
    return a.names_ == b.names_ && a.root_ == b.root_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t slot(VertexIndex u, VertexIndex v) const {
    if (u >= size() || v >= size()) throw InvalidInput("vertex index out of range");
    return u * size() + v;
  }

  std::vector<std::string> names_;
  std::vector<std::optional<Rational>> weights_;
  VertexIndex root_ = 0;
};

/// Vertex sequence (v1, ..., vn), n >= 3, closed by the edge {vn, v1}.
/// Enumerated cycles start at their smallest vertex with vertices[1] < vertices.back().
struct Cycle {
  std::vector<VertexIndex> vertices;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

using Path = std::vector<VertexIndex>;

inline std::vector<std::string> vertex_names(const WeightedRootedGraph& g, std::span<const VertexIndex> vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (auto v : vs) out.push_back(g.name(v));
  return out;
}

/// Edge weights of a cycle in traversal order: w(v1 v2), ..., w(vn v1).
inline std::vector<Rational> cycle_weights(const WeightedRootedGraph& g, const Cycle& c) {
  std::vector<Rational> out;
  const auto& vs = c.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back(g.weight(vs[i], vs[(i + 1) % vs.size()]));
  return out;
}

inline std::vector<Rational> path_weights(const WeightedRootedGraph& g, const Path& p) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out.push_back(g.weight(p[i], p[i + 1]));
  return out;
}

inline Rational sum_of(std::span<const Rational> ws) {
  Rational s = 0;
  for (const auto& w : ws) s += w;
  return s;
}

inline Rational max_of(std::span<const Rational> ws) {
  Rational m = 0;
  for (const auto& w : ws) m = std::max(m, w);
  return m;
}

/// 2 max w(e) - sum w(e) over the cycle: positive means the cycle cannot be metrized,
/// zero means the cycle is tight.
inline Rational cycle_excess(const WeightedRootedGraph& g, const Cycle& c) {
  auto ws = cycle_weights(g, c);
  return 2 * max_of(ws) - sum_of(ws);
}

inline bool is_tight(const WeightedRootedGraph& g, const Cycle& c) { return cycle_excess(g, c) == 0; }

/// Checks that `c` is a genuine cycle of `g` (distinct vertices, closing edges present).
inline bool is_cycle_of(const WeightedRootedGraph& g, const Cycle& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 3) return false;
  std::vector<VertexIndex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] >= g.size() || !g.adjacent(vs[i], vs[(i + 1) % vs.size()])) return false;
  }
  return true;
}

/// Connected components as sorted index lists, ordered by their smallest vertex.
inline std::vector<std::vector<VertexIndex>> connected_components(const WeightedRootedGraph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<VertexIndex>> out;
  for (VertexIndex s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<VertexIndex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      VertexIndex u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (VertexIndex v = 0; v < g.size(); ++v) {
        if (comp[v] < 0 && g.adjacent(u, v)) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Throws DisconnectedGraph naming one vertex from each of two components.
inline void require_connected(const WeightedRootedGraph& g) {
  auto comps = connected_components(g);
  if (comps.size() > 1)
    throw DisconnectedGraph("graph is disconnected: '" + g.name(comps[0].front()) + "' and '" +
                            g.name(comps[1].front()) + "' lie in different components");
}

}  // namespace metric_cluster
