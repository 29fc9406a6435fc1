#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "graph.hpp"

namespace metric_cluster {

inline constexpr std::size_t kDefaultEnumerationCap = 14;
inline constexpr std::size_t kDefaultIsomorphismCap = 12;

/// The vertex cap for exponential searches; METRIC_CLUSTER_MAX_VERTICES overrides `fallback`.
inline std::size_t vertex_cap(std::size_t fallback) {
  if (const char* env = std::getenv("METRIC_CLUSTER_MAX_VERTICES")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

inline std::size_t enumeration_cap() { return vertex_cap(kDefaultEnumerationCap); }

inline void require_within_cap(const WeightedRootedGraph& g, std::size_t cap, const char* what) {
  if (g.size() > cap)
    throw LimitExceeded(std::string(what) + " refused: graph has " + std::to_string(g.size()) +
                        " vertices, cap is " + std::to_string(cap));
}

namespace detail {

template <class Visit>
void extend_cycles(const WeightedRootedGraph& g, VertexIndex start, std::vector<VertexIndex>& path,
                   std::vector<char>& on_path, Visit& visit) {
  const VertexIndex tail = path.back();
  for (VertexIndex v = start + 1; v < g.size(); ++v) {
    if (!g.adjacent(tail, v) || on_path[v]) continue;
    path.push_back(v);
    on_path[v] = 1;
    // Close the cycle; the orientation test keeps one of the two traversal directions.
    if (path.size() >= 3 && g.adjacent(v, start) && path[1] < v) visit(Cycle{path});
    extend_cycles(g, start, path, on_path, visit);
    on_path[v] = 0;
    path.pop_back();
  }
}

template <class Visit>
void extend_paths(const WeightedRootedGraph& g, VertexIndex target, Path& path, std::vector<char>& on_path,
                  Visit& visit) {
  const VertexIndex tail = path.back();
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (!g.adjacent(tail, v) || on_path[v]) continue;
    path.push_back(v);
    if (v == target) {
      visit(static_cast<const Path&>(path));
    } else {
      on_path[v] = 1;
      extend_paths(g, target, path, on_path, visit);
      on_path[v] = 0;
    }
    path.pop_back();
  }
}

}  // namespace detail

/// Calls `visit(const Cycle&)` once per simple cycle (up to rotation and reflection).
template <class Visit>
void for_each_cycle(const WeightedRootedGraph& g, Visit&& visit, std::size_t cap = enumeration_cap()) {
  require_within_cap(g, cap, "cycle enumeration");
  std::vector<char> on_path(g.size(), 0);
  for (VertexIndex s = 0; s < g.size(); ++s) {
    std::vector<VertexIndex> path{s};
    on_path[s] = 1;
    detail::extend_cycles(g, s, path, on_path, visit);
    on_path[s] = 0;
  }
}

inline std::vector<Cycle> enumerate_cycles(const WeightedRootedGraph& g, std::size_t cap = enumeration_cap()) {
  std::vector<Cycle> out;
  for_each_cycle(g, [&](const Cycle& c) { out.push_back(c); }, cap);
  return out;
}

/// Calls `visit(const Path&)` once per simple u-v path (each path runs from u to v).
template <class Visit>
void for_each_simple_path(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v, Visit&& visit,
                          std::size_t cap = enumeration_cap()) {
  if (u >= g.size() || v >= g.size()) throw InvalidInput("vertex index out of range");
  if (u == v) throw InvalidInput("path endpoints must differ");
  require_within_cap(g, cap, "path enumeration");
  std::vector<char> on_path(g.size(), 0);
  Path path{u};
  on_path[u] = 1;
  detail::extend_paths(g, v, path, on_path, visit);
}

inline std::vector<Path> enumerate_simple_paths(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v,
                                                std::size_t cap = enumeration_cap()) {
  std::vector<Path> out;
  for_each_simple_path(g, u, v, [&](const Path& p) { out.push_back(p); }, cap);
  return out;
}

}  // namespace metric_cluster
