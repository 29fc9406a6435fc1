#pragma once

// Slow, obviously-correct reference implementations used to check the library.
// None of these call into the algorithms they are checking.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <metric_cluster.hpp>

namespace oracle {

using namespace metric_cluster;

inline bool has_edge(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v) {
  return g.weight_if_edge(u, v).has_value();
}

/// Rotation/reflection-normal form of a closed walk's vertex list.
inline std::vector<VertexIndex> normal_cycle(std::vector<VertexIndex> c) {
  auto best = c;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t s = 0; s < c.size(); ++s) {
      std::vector<VertexIndex> r(c.begin() + static_cast<std::ptrdiff_t>(s), c.end());
      r.insert(r.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(s));
      best = std::min(best, r);
    }
    std::reverse(c.begin(), c.end());
  }
  return best;
}

/// Every simple cycle, found by trying every ordering of every vertex subset of size >= 3.
inline std::set<std::vector<VertexIndex>> cycles(const WeightedRootedGraph& g) {
  std::set<std::vector<VertexIndex>> out;
  const std::size_t n = g.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 3) continue;
    std::vector<VertexIndex> vs;
    for (VertexIndex v = 0; v < n; ++v)
      if (mask >> v & 1u) vs.push_back(v);
    do {
      bool closed = true;
      for (std::size_t i = 0; i < vs.size() && closed; ++i) closed = has_edge(g, vs[i], vs[(i + 1) % vs.size()]);
      if (closed) out.insert(normal_cycle(vs));
    } while (std::next_permutation(vs.begin() + 1, vs.end()));
  }
  return out;
}

/// Every simple u-v path, by trying every ordering of every subset of intermediate vertices.
inline std::set<std::vector<VertexIndex>> paths(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v) {
  std::set<std::vector<VertexIndex>> out;
  std::vector<VertexIndex> others;
  for (VertexIndex x = 0; x < g.size(); ++x)
    if (x != u && x != v) others.push_back(x);
  for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
    std::vector<VertexIndex> mid;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1u) mid.push_back(others[i]);
    do {
      std::vector<VertexIndex> p{u};
      p.insert(p.end(), mid.begin(), mid.end());
      p.push_back(v);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < p.size() && ok; ++i) ok = has_edge(g, p[i], p[i + 1]);
      if (ok) out.insert(p);
    } while (std::next_permutation(mid.begin(), mid.end()));
  }
  return out;
}

inline std::vector<Rational> weights_along(const WeightedRootedGraph& g, const std::vector<VertexIndex>& walk,
                                           bool closed) {
  std::vector<Rational> ws;
  const std::size_t m = closed ? walk.size() : walk.size() - 1;
  for (std::size_t i = 0; i < m; ++i) ws.push_back(*g.weight_if_edge(walk[i], walk[(i + 1) % walk.size()]));
  return ws;
}

inline Rational total(const std::vector<Rational>& ws) {
  Rational s = 0;
  for (const auto& w : ws) s += w;
  return s;
}

inline Rational largest(const std::vector<Rational>& ws) {
  Rational m = 0;
  for (const auto& w : ws) m = std::max(m, w);
  return m;
}

/// Classification straight from the cycle condition over all cycles.
inline Metrizability classify(const WeightedRootedGraph& g) {
  for (const auto& c : cycles(g)) {
    auto ws = weights_along(g, c, true);
    if (2 * largest(ws) > total(ws)) return Metrizability::NotPseudometrizable;
  }
  for (VertexIndex u = 0; u < g.size(); ++u)
    for (VertexIndex v = u + 1; v < g.size(); ++v)
      if (has_edge(g, u, v) && *g.weight_if_edge(u, v) == 0) return Metrizability::PseudometrizableOnly;
  return Metrizability::Metrizable;
}

/// All-pairs shortest paths; nullopt marks unreachable.
inline std::vector<std::vector<std::optional<Rational>>> floyd_warshall(const WeightedRootedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (VertexIndex u = 0; u < n; ++u) {
    d[u][u] = Rational(0);
    for (VertexIndex v = 0; v < n; ++v)
      if (u != v && has_edge(g, u, v)) d[u][v] = *g.weight_if_edge(u, v);
  }
  for (VertexIndex k = 0; k < n; ++k)
    for (VertexIndex i = 0; i < n; ++i)
      for (VertexIndex j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
  return d;
}

/// [max_P (2 max - sum)+, min_P sum] over brute-force paths.
inline IntervalQ interval(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v) {
  IntervalQ out{Rational(0), Rational(-1)};
  for (const auto& p : paths(g, u, v)) {
    auto ws = weights_along(g, p, false);
    Rational s = total(ws);
    out.lo = std::max(out.lo, Rational(std::max(Rational(0), Rational(2 * largest(ws) - s))));
    if (out.hi < 0 || s < out.hi) out.hi = s;
  }
  return out;
}

/// The pair's distance is forced exactly when g + {u, v} at weight d*(u, v) has a tight cycle
/// through {u, v} whose maximum is attained by an edge other than {u, v}.
inline bool forced_by_tight_cycle(const WeightedRootedGraph& g, VertexIndex u, VertexIndex v) {
  auto d = floyd_warshall(g);
  if (!d[u][v]) return false;
  auto h = g.with_edge(u, v, *d[u][v]);
  for (const auto& c : cycles(h)) {
    std::size_t at = c.size();
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto a = c[i], b = c[(i + 1) % c.size()];
      if ((a == u && b == v) || (a == v && b == u)) at = i;
    }
    if (at == c.size()) continue;
    auto ws = weights_along(h, c, true);
    if (2 * largest(ws) != total(ws)) continue;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (i != at && 2 * ws[i] == total(ws)) return true;
  }
  return false;
}

/// Does `d` satisfy every pseudometric axiom?
inline bool is_pseudometric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) < 0 || d(i, j) != d(j, i)) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k)) return false;
    }
  }
  return true;
}

/// Maximal cliques of the subgraph induced on `within`, by subset enumeration.
inline std::set<std::vector<VertexIndex>> maximal_cliques(const WeightedRootedGraph& g,
                                                          const std::vector<VertexIndex>& within) {
  const std::size_t k = within.size();
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u)) ok = has_edge(g, within[i], within[j]);
    if (ok) cliques.push_back(mask);
  }
  std::set<std::vector<VertexIndex>> out;
  for (auto m : cliques) {
    bool maximal = std::none_of(cliques.begin(), cliques.end(), [&](std::uint32_t o) { return o != m && (o & m) == m; });
    if (!maximal) continue;
    std::vector<VertexIndex> vs;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1u) vs.push_back(within[i]);
    out.insert(vs);
  }
  return out;
}

inline std::set<std::vector<VertexIndex>> maximal_cliques(const WeightedRootedGraph& g) {
  std::vector<VertexIndex> all(g.size());
  std::iota(all.begin(), all.end(), VertexIndex{0});
  return oracle::maximal_cliques(g, all);
}

/// Rooted weighted isomorphism by trying every permutation.
inline bool isomorphic(const WeightedRootedGraph& a, const WeightedRootedGraph& b, bool weighted) {
  if (a.size() != b.size()) return false;
  std::vector<VertexIndex> p(a.size());
  std::iota(p.begin(), p.end(), VertexIndex{0});
  do {
    if (p[a.root()] != b.root()) continue;
    bool ok = true;
    for (VertexIndex u = 0; u < a.size() && ok; ++u)
      for (VertexIndex v = u + 1; v < a.size() && ok; ++v) {
        const auto& x = a.weight_if_edge(u, v);
        const auto& y = b.weight_if_edge(p[u], p[v]);
        ok = x.has_value() == y.has_value() && (!x || !weighted || *x == *y);
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Graph corpora
// ---------------------------------------------------------------------------

/// Simple graph on n <= 8 vertices as an edge bitmask over pairs (i < j) in row order.
struct Shape {
  std::size_t n = 0;
  std::uint32_t bits = 0;
};

inline std::size_t pair_slot(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline bool shape_edge(const Shape& s, std::size_t i, std::size_t j) { return s.bits >> pair_slot(s.n, i, j) & 1u; }

/// Smallest relabelled bitmask; permutations are restricted to ones that sort vertices by degree.
inline std::uint32_t canonical(const Shape& s) {
  std::vector<int> deg(s.n, 0);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j)
      if (i != j && shape_edge(s, i, j)) ++deg[i];
  std::vector<std::size_t> order(s.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
  // blocks of equal degree are permuted independently
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < s.n;) {
    std::size_t j = i;
    while (j < s.n && deg[order[j]] == deg[order[i]]) ++j;
    blocks.push_back({i, j});
    i = j;
  }
  std::uint32_t best = ~0u;
  std::function<void(std::size_t)> go = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::uint32_t bits = 0;
      for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = i + 1; j < s.n; ++j)
          if (shape_edge(s, order[i], order[j])) bits |= 1u << pair_slot(s.n, i, j);
      best = std::min(best, bits);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    do go(b + 1);
    while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                 order.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  go(0);
  return best;
}

/// One representative per isomorphism class of simple graphs on exactly n vertices, built by
/// adding a vertex with every possible neighbourhood to each class on n - 1 vertices.
inline std::vector<Shape> all_shapes(std::size_t n) {
  std::vector<Shape> level{{0, 0}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::set<std::uint32_t> seen;
    std::vector<Shape> next;
    for (const auto& s : level) {
      for (std::uint32_t nb = 0; nb < (1u << s.n); ++nb) {
        Shape t{k, 0};
        for (std::size_t i = 0; i < s.n; ++i)
          for (std::size_t j = i + 1; j < s.n; ++j)
            if (shape_edge(s, i, j)) t.bits |= 1u << pair_slot(k, i, j);
        for (std::size_t i = 0; i < s.n; ++i)
          if (nb >> i & 1u) t.bits |= 1u << pair_slot(k, i, k - 1);
        auto c = canonical(t);
        if (seen.insert(c).second) next.push_back({k, c});
      }
    }
    level = std::move(next);
  }
  return level;
}

inline bool shape_connected(const Shape& s) {
  if (s.n == 0) return false;
  std::vector<char> seen(s.n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < s.n; ++y)
      if (!seen[y] && y != x && shape_edge(s, x, y)) seen[y] = 1, stack.push_back(y);
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

inline std::string vname(std::size_t i) { return "v" + std::to_string(i); }

/// Shape with weights from `weight(i, j)`, rooted at vertex `root`.
template <class WeightFn>
WeightedRootedGraph weighted(const Shape& s, std::size_t root, WeightFn weight) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s.n; ++i) names.push_back(vname(i));
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j)
      if (shape_edge(s, i, j)) edges.push_back({names[i], names[j], weight(i, j)});
  return WeightedRootedGraph(names, names[root], edges);
}

/// A new root "r" joined to every vertex of `s`, all weights 1 (weights are re-synthesized later).
inline WeightedRootedGraph with_dominating_root(const Shape& s) {
  std::vector<std::string> names{"r"};
  for (std::size_t i = 0; i < s.n; ++i) names.push_back(vname(i));
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (std::size_t i = 0; i < s.n; ++i) edges.push_back({"r", vname(i), Rational(1)});
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j)
      if (shape_edge(s, i, j)) edges.push_back({vname(i), vname(j), Rational(1)});
  return WeightedRootedGraph(names, "r", edges);
}

/// Every rooted shape on at most max_vertices vertices whose root dominates.
inline std::vector<WeightedRootedGraph> dominated_shapes(std::size_t max_vertices) {
  std::vector<WeightedRootedGraph> out;
  for (std::size_t k = 0; k + 1 <= max_vertices; ++k)
    for (const auto& s : all_shapes(k)) out.push_back(with_dominating_root(s));
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// p/q with 1 <= q <= max_den and lo <= p/q <= hi.
inline Rational random_rational(Rng& rng, long long lo, long long hi, long long max_den = 6) {
  long long q = uniform(rng, 1, max_den);
  return Rational(uniform(rng, lo * q, hi * q), q);
}

/// Connected random graph on n vertices with positive rational weights.
inline WeightedRootedGraph random_connected(Rng& rng, std::size_t n, double density) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vname(i));
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i < n; ++i) pairs.insert({static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(i) - 1)), i});
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.insert({i, j});
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (auto [i, j] : pairs) edges.push_back({names[i], names[j], random_rational(rng, 1, 9)});
  return WeightedRootedGraph(names, names[0], edges);
}

/// Points at distinct rational positions on a line, a random connected set of pairs kept,
/// each weighted by the distance. Such graphs are metrizable and full of tight cycles.
inline WeightedRootedGraph random_line_subgraph(Rng& rng, std::size_t n, double density) {
  std::set<Rational> used;
  std::vector<Rational> x;
  while (x.size() < n) {
    Rational p = random_rational(rng, 0, 12, 2);
    if (used.insert(p).second) x.push_back(p);
  }
  auto skeleton = random_connected(rng, n, density);
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (const auto& e : skeleton.edges()) {
    Rational d = x[e.u] > x[e.v] ? Rational(x[e.u] - x[e.v]) : Rational(x[e.v] - x[e.u]);
    edges.push_back({skeleton.name(e.u), skeleton.name(e.v), d});
  }
  return WeightedRootedGraph({skeleton.names().begin(), skeleton.names().end()}, skeleton.name(0), edges);
}

/// Complete graph on points of a line with the root at the leftmost point.
inline WeightedRootedGraph line_complete(Rng& rng, std::size_t n) {
  std::set<Rational> xs{Rational(0)};
  while (xs.size() < n) xs.insert(random_rational(rng, 1, 20, 3));
  std::vector<Rational> x(xs.begin(), xs.end());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vname(i));
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({names[i], names[j], x[j] - x[i]});
  return WeightedRootedGraph(names, names[0], edges);
}

}  // namespace oracle
