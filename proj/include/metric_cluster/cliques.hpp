#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "graph.hpp"

namespace metric_cluster {

/// True iff `v` is adjacent to every other vertex (vacuously true for K1).
inline bool is_dominating(const WeightedRootedGraph& g, VertexIndex v) {
  for (VertexIndex u = 0; u < g.size(); ++u)
    if (u != v && !g.adjacent(u, v)) return false;
  return true;
}

namespace detail {

using VertexSet = std::vector<VertexIndex>;  // kept sorted

inline VertexSet intersect_neighbors(const WeightedRootedGraph& g, const VertexSet& s, VertexIndex v) {
  VertexSet out;
  for (auto u : s)
    if (g.adjacent(u, v)) out.push_back(u);
  return out;
}

// Bron-Kerbosch with Tomita pivoting.
inline void bron_kerbosch(const WeightedRootedGraph& g, VertexSet& r, VertexSet p, VertexSet x,
                          std::vector<VertexSet>& out) {
  if (p.empty()) {
    if (x.empty()) {
      VertexSet c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
    return;
  }
  VertexIndex pivot = p.front();
  std::size_t best = 0;
  bool first = true;
  for (const VertexSet* s : {&p, &x}) {
    for (auto u : *s) {
      std::size_t cnt = 0;
      for (auto v : p) cnt += g.adjacent(u, v) ? 1 : 0;
      if (first || cnt > best) {
        pivot = u;
        best = cnt;
        first = false;
      }
    }
  }
  VertexSet candidates;
  for (auto v : p)
    if (!g.adjacent(pivot, v)) candidates.push_back(v);
  for (auto v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, intersect_neighbors(g, p, v), intersect_neighbors(g, x, v), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.insert(std::upper_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace detail

/// Every maximal clique of the subgraph induced by `within`, each sorted, listed in
/// lexicographic order.
inline std::vector<std::vector<VertexIndex>> maximal_cliques(const WeightedRootedGraph& g,
                                                             std::vector<VertexIndex> within) {
  std::sort(within.begin(), within.end());
  within.erase(std::unique(within.begin(), within.end()), within.end());
  std::vector<std::vector<VertexIndex>> out;
  if (within.empty()) return out;
  std::vector<VertexIndex> r;
  detail::bron_kerbosch(g, r, std::move(within), {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<VertexIndex>> maximal_cliques(const WeightedRootedGraph& g) {
  std::vector<VertexIndex> all(g.size());
  std::iota(all.begin(), all.end(), VertexIndex{0});
  return maximal_cliques(g, std::move(all));
}

inline bool is_clique(const WeightedRootedGraph& g, const std::vector<VertexIndex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j] || !g.adjacent(vs[i], vs[j])) return false;
  return true;
}

}  // namespace metric_cluster
