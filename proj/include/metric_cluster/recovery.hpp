#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "fpc.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "metrization.hpp"
#include "realization.hpp"

namespace metric_cluster {

struct RecoveryOptions {
  double tol_rel = 1e-6;
  double tol_abs = 1e-9;
  std::optional<std::size_t> window;  // default: one family period, else max(4, depth/3)
  bool exact = false;                 // use the rational shadows with zero tolerance
};

enum class TraceStatus { Vanishing, Stable, Unstable };
enum class PairRelation { Equivalent, Adjacent, NonAdjacent };

inline const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Vanishing:
      return "vanishing";
    case TraceStatus::Stable:
      return "stable";
    case TraceStatus::Unstable:
      return "unstable";
  }
  return "?";
}

inline const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Equivalent:
      return "equivalent";
    case PairRelation::Adjacent:
      return "adjacent";
    case PairRelation::NonAdjacent:
      return "non-adjacent";
  }
  return "?";
}

/// Tail statistics of a normalized sequence over the recovery window.
struct TailStats {
  double mean = 0, liminf = 0, limsup = 0, spread = 0;
};

/// Normalized basepoint distance d(x_n, p) / r_n of one labeled sequence.
struct TraceDiagnostics {
  std::string label;
  TailStats basepoint;
  TraceStatus status = TraceStatus::Stable;
};

/// Normalized mutual distance d(x_n, y_n) / r_n of two labeled sequences.
struct PairDiagnostics {
  std::string a, b;
  TailStats distance;
  PairRelation relation = PairRelation::NonAdjacent;
};

/// Weighted rooted graph read off a leveled cloud, plus everything needed to audit it.
struct RecoveredCluster {
  WeightedRootedGraph graph;
  std::vector<Rational> rho0;                   // by vertex of `graph`
  std::vector<double> rho0_raw;                 // unrounded tail means
  std::map<VertexPair, double> raw_weights;     // unrounded tail means, u < v
  std::vector<std::vector<std::string>> classes;  // labels merged into each vertex
  std::vector<std::size_t> window_levels;
  double zero_threshold = 0;
  std::vector<TraceDiagnostics> traces;
  std::vector<PairDiagnostics> pairs;
  std::vector<std::string> merge_log;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::size_t default_window(const LeveledPointCloud& cloud) {
  if (cloud.period) return *cloud.period;
  return std::min(cloud.levels.size(), std::max<std::size_t>(4, cloud.levels.size() / 3));
}

inline std::vector<std::string> sequence_labels(const LeveledPointCloud& cloud) {
  if (cloud.levels.empty()) throw InvalidInput("cloud has no levels");
  std::vector<std::string> labels;
  for (const auto& level : cloud.levels) {
    std::vector<std::string> here;
    for (const auto& p : level.points) {
      if (p.label.empty())
        throw InvalidInput("level " + std::to_string(level.n) +
                           " has unlabeled points; recovery needs one labeled sequence per point");
      if (p.coords.size() != cloud.dimension)
        throw InvalidInput("point '" + p.label + "' at level " + std::to_string(level.n) + " has wrong dimension");
      here.push_back(p.label);
    }
    std::sort(here.begin(), here.end());
    if (std::adjacent_find(here.begin(), here.end()) != here.end())
      throw InvalidInput("duplicate label at level " + std::to_string(level.n));
    if (&level == &cloud.levels.front())
      labels = here;
    else if (here != labels)
      throw InvalidInput("level " + std::to_string(level.n) + " does not carry the same labels as level " +
                         std::to_string(cloud.levels.front().n));
  }
  return labels;
}

inline double as_double(double x) { return x; }
inline double as_double(const Rational& x) { return to_double(x); }

template <class T>
TailStats tail_stats(const std::vector<T>& xs) {
  TailStats s;
  T lo = xs.front(), hi = xs.front(), sum = 0;
  for (const auto& x : xs) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  s.liminf = as_double(lo);
  s.limsup = as_double(hi);
  s.spread = as_double(T(hi - lo));
  s.mean = as_double(T(sum / static_cast<int>(xs.size())));
  return s;
}

template <class T>
T exact_mean(const std::vector<T>& xs) {
  T sum = 0;
  for (const auto& x : xs) sum += x;
  return sum / static_cast<int>(xs.size());
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <class T>
RecoveredCluster recover_with(const LeveledPointCloud& cloud, const RecoveryOptions& opt) {
  constexpr bool kExact = std::is_same_v<T, Rational>;
  const auto labels = sequence_labels(cloud);
  const std::size_t W = opt.window.value_or(default_window(cloud));
  if (W == 0 || W > cloud.levels.size())
    throw InvalidInput("window " + std::to_string(W) + " must lie in [1, " + std::to_string(cloud.levels.size()) +
                       "]");
  if (cloud.period && W < *cloud.period)
    throw InvalidInput("window " + std::to_string(W) + " is shorter than one metric-family period (" +
                       std::to_string(*cloud.period) + "); oscillations would go undetected");

  const std::size_t L = labels.size();
  const auto first = cloud.levels.end() - static_cast<std::ptrdiff_t>(W);
  std::vector<const CloudLevel*> window;
  for (auto it = first; it != cloud.levels.end(); ++it) window.push_back(&*it);

  // coords[t][label] in the chosen arithmetic
  std::vector<std::vector<std::vector<T>>> coords(W, std::vector<std::vector<T>>(L));
  std::vector<T> scale(W);
  std::vector<T> base(cloud.dimension, T(0));
  if constexpr (!kExact) base = cloud.basepoint;
  for (std::size_t t = 0; t < W; ++t) {
    const CloudLevel& level = *window[t];
    if constexpr (kExact) {
      if (!level.r_exact) throw InvalidInput("exact recovery needs exact scaling values");
      scale[t] = *level.r_exact;
    } else {
      scale[t] = level.r;
    }
    if (!(as_double(scale[t]) > 0)) throw InvalidInput("scaling values must be positive");
    for (const auto& p : level.points) {
      const std::size_t i = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), p.label) - labels.begin());
      if constexpr (kExact) {
        if (!p.exact) throw InvalidInput("exact recovery needs exact coordinates");
        coords[t][i] = *p.exact;
      } else {
        coords[t][i] = p.coords;
      }
    }
  }
  if constexpr (kExact) {
    for (double b : cloud.basepoint)
      if (b != 0.0) throw InvalidInput("exact recovery needs the basepoint at the origin");
  }

  const auto normalized_to_base = [&](std::size_t i) {
    std::vector<T> xs(W);
    for (std::size_t t = 0; t < W; ++t) xs[t] = T(sup_distance(coords[t][i], base) / scale[t]);
    return xs;
  };
  const auto normalized_pair = [&](std::size_t i, std::size_t j) {
    std::vector<T> xs(W);
    for (std::size_t t = 0; t < W; ++t) xs[t] = T(sup_distance(coords[t][i], coords[t][j]) / scale[t]);
    return xs;
  };

  RecoveredCluster out{WeightedRootedGraph({"p"}, "p"), {}, {}, {}, {}, {}, 0.0, {}, {}, {}, {}};
  for (const auto* level : window) out.window_levels.push_back(level->n);

  std::vector<std::vector<T>> base_series(L);
  double space_scale = 0;
  for (std::size_t i = 0; i < L; ++i) {
    base_series[i] = normalized_to_base(i);
    for (const auto& x : base_series[i]) space_scale = std::max(space_scale, as_double(x));
  }
  const double tau = kExact ? 0.0 : opt.tol_abs + opt.tol_rel * space_scale;
  out.zero_threshold = tau;

  const auto vanishes = [&](const std::vector<T>& xs) {
    if constexpr (kExact) {
      return std::all_of(xs.begin(), xs.end(), [](const T& x) { return x == 0; });
    } else {
      return std::all_of(xs.begin(), xs.end(), [&](double x) { return x <= tau; });
    }
  };
  const auto settles = [&](const std::vector<T>& xs, const TailStats& s) {
    if constexpr (kExact) {
      return std::all_of(xs.begin(), xs.end(), [&](const T& x) { return x == xs.front(); });
    } else {
      return s.spread <= opt.tol_abs + opt.tol_rel * s.mean;
    }
  };

  // Classify the traces against the basepoint.
  std::vector<TraceStatus> status(L);
  for (std::size_t i = 0; i < L; ++i) {
    TailStats s = tail_stats(base_series[i]);
    status[i] = vanishes(base_series[i]) ? TraceStatus::Vanishing
                : settles(base_series[i], s) ? TraceStatus::Stable
                                             : TraceStatus::Unstable;
    out.traces.push_back({labels[i], s, status[i]});
    if (status[i] == TraceStatus::Unstable)
      out.warnings.push_back("trace '" + labels[i] + "' dropped: normalized basepoint distance does not settle");
  }

  // Zero-limit equivalence among the stable traces, closed transitively.
  UnionFind uf(L);
  std::vector<std::size_t> stable;
  for (std::size_t i = 0; i < L; ++i)
    if (status[i] == TraceStatus::Stable) stable.push_back(i);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<T>> pair_series;
  for (std::size_t a = 0; a < stable.size(); ++a) {
    for (std::size_t b = a + 1; b < stable.size(); ++b) {
      auto xs = normalized_pair(stable[a], stable[b]);
      if (vanishes(xs)) {
        uf.unite(stable[a], stable[b]);
        out.merge_log.push_back("'" + labels[stable[b]] + "' ~ '" + labels[stable[a]] + "'");
      }
      pair_series.emplace(std::make_pair(stable[a], stable[b]), std::move(xs));
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (auto i : stable) members[uf.find(i)].push_back(i);
  for (const auto& [rep, ms] : members) {
    for (std::size_t a = 0; a < ms.size(); ++a) {
      for (std::size_t b = a + 1; b < ms.size(); ++b) {
        double mean = tail_stats(pair_series.at({ms[a], ms[b]})).mean;
        if (mean > 3 * tau)
          throw Error("equivalence closure merged '" + labels[ms[a]] + "' and '" + labels[ms[b]] +
                      "' whose mean normalized distance " + std::to_string(mean) + " exceeds 3x the zero threshold");
      }
    }
  }

  // Root class: the basepoint together with every vanishing trace.
  std::vector<std::string> root_members;
  for (std::size_t i = 0; i < L; ++i)
    if (status[i] == TraceStatus::Vanishing) root_members.push_back(labels[i]);
  std::string root_name;
  if (!root_members.empty()) {
    root_name = root_members.front();
  } else {
    root_name = "p";
    while (std::binary_search(labels.begin(), labels.end(), root_name)) root_name += "'";
  }
  for (std::size_t k = 1; k < root_members.size(); ++k)
    out.merge_log.push_back("'" + root_members[k] + "' ~ basepoint class '" + root_name + "'");

  std::vector<std::size_t> reps;
  for (const auto& [rep, ms] : members) reps.push_back(rep);

  std::vector<std::string> names{root_name};
  for (auto rep : reps) names.push_back(labels[rep]);

  const auto snap = [&](const std::vector<T>& xs) -> std::pair<Rational, double> {
    T mean = exact_mean(xs);
    if constexpr (kExact) {
      return {mean, to_double(mean)};
    } else {
      const double delta = opt.tol_abs + opt.tol_rel * std::fabs(mean);
      return {simplest_between(exact_from_double(mean - delta), exact_from_double(mean + delta)), mean};
    }
  };

  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  std::map<std::pair<std::string, std::string>, double> raw_by_name;
  std::map<std::string, std::pair<Rational, double>> rho_by_name{{root_name, {Rational(0), 0.0}}};
  for (auto rep : reps) {
    auto [w, raw] = snap(base_series[rep]);
    edges.push_back({root_name, labels[rep], w});
    raw_by_name[{root_name, labels[rep]}] = raw;
    rho_by_name[labels[rep]] = {w, raw};
  }
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      const auto& xs = pair_series.at({reps[a], reps[b]});
      TailStats s = tail_stats(xs);
      PairRelation rel = settles(xs, s) ? PairRelation::Adjacent : PairRelation::NonAdjacent;
      out.pairs.push_back({labels[reps[a]], labels[reps[b]], s, rel});
      if (rel == PairRelation::Adjacent) {
        auto [w, raw] = snap(xs);
        edges.push_back({labels[reps[a]], labels[reps[b]], w});
        raw_by_name[{labels[reps[a]], labels[reps[b]]}] = raw;
      }
    }
  }
  for (const auto& [key, xs] : pair_series) {
    if (uf.find(key.first) == uf.find(key.second))
      out.pairs.push_back({labels[key.first], labels[key.second], tail_stats(xs), PairRelation::Equivalent});
  }

  out.graph = WeightedRootedGraph(names, root_name, edges);
  const auto& g = out.graph;
  out.classes.resize(g.size());
  out.rho0.resize(g.size());
  out.rho0_raw.resize(g.size());
  out.classes[g.root()] = root_members;
  for (auto rep : reps)
    for (auto m : members[rep]) out.classes[g.index(labels[rep])].push_back(labels[m]);
  for (VertexIndex v = 0; v < g.size(); ++v) {
    std::tie(out.rho0[v], out.rho0_raw[v]) = rho_by_name.at(g.name(v));
  }
  for (const auto& [key, raw] : raw_by_name) {
    VertexIndex u = g.index(key.first), v = g.index(key.second);
    out.raw_weights[{std::min(u, v), std::max(u, v)}] = raw;
  }

  // Audit the structural properties every cluster of pretangent spaces has.
  const bool dominating = is_dominating(g, g.root());
  if (!dominating) out.warnings.push_back("root is not dominating");
  if (connected_components(g).size() == 1 && check_metrizable(g).classification != Metrizability::Metrizable)
    out.warnings.push_back("recovered weighted graph is not metrizable");
  if (dominating && !clique_bound_check(g).holds)
    out.warnings.push_back("maximal-clique count exceeds the Moon-Moser bound");
  for (VertexIndex u = 0; u < g.size(); ++u) {
    for (VertexIndex v = u + 1; v < g.size(); ++v) {
      const bool close = kExact ? out.rho0[u] == out.rho0[v]
                                : std::fabs(out.rho0_raw[u] - out.rho0_raw[v]) <= 3 * tau;
      if (close)
        out.warnings.push_back("rho0 of '" + g.name(u) + "' and '" + g.name(v) + "' agree within tolerance");
    }
  }
  return out;
}

}  // namespace detail

/// Reads the cluster of pretangent spaces off the last `window` levels of a labeled cloud.
///
/// Each label is one sequence (x_n). With a_n = d(x_n, y_n) / r_n over the window, two
/// sequences are equivalent when every a_n is below the zero threshold
/// tol_abs + tol_rel * (largest normalized basepoint distance), and adjacent when
/// max a_n - min a_n <= tol_abs + tol_rel * mean a_n, with the mean as edge weight.
/// Sequences whose normalized basepoint distance vanishes form the root class;
/// those whose basepoint distance does not settle are dropped with a warning.
/// Float weights are replaced by the simplest rational within their tolerance band.
inline RecoveredCluster recover_cluster(const LeveledPointCloud& cloud, const RecoveryOptions& opt = {}) {
  if (opt.exact) return detail::recover_with<Rational>(cloud, opt);
  return detail::recover_with<double>(cloud, opt);
}

/// The cloud restricted to the given level numbers. The family period is carried over when
/// the levels form an arithmetic progression.
inline LeveledPointCloud subsample_levels(const LeveledPointCloud& cloud, const std::vector<std::size_t>& levels) {
  if (levels.empty()) throw InvalidInput("subsample needs at least one level");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw InvalidInput("subsample levels must be strictly increasing");
  LeveledPointCloud out;
  out.dimension = cloud.dimension;
  out.basepoint = cloud.basepoint;
  for (auto n : levels) {
    auto it = std::find_if(cloud.levels.begin(), cloud.levels.end(), [&](const CloudLevel& l) { return l.n == n; });
    if (it == cloud.levels.end()) throw InvalidInput("cloud has no level " + std::to_string(n));
    out.levels.push_back(*it);
  }
  if (cloud.period) {
    if (levels.size() == 1) {
      out.period = 1;
    } else {
      const std::size_t stride = levels[1] - levels[0];
      bool arithmetic = true;
      for (std::size_t i = 1; i < levels.size(); ++i) arithmetic = arithmetic && levels[i] - levels[i - 1] == stride;
      if (arithmetic) out.period = *cloud.period / std::gcd(*cloud.period, stride);
    }
  }
  return out;
}

/// Level numbers first, first + stride, ... present in the cloud.
inline std::vector<std::size_t> strided_levels(const LeveledPointCloud& cloud, std::size_t first, std::size_t stride) {
  if (stride == 0) throw InvalidInput("stride must be positive");
  std::vector<std::size_t> out;
  for (const auto& level : cloud.levels)
    if (level.n >= first && (level.n - first) % stride == 0) out.push_back(level.n);
  return out;
}

/// The vertex map from a full recovery to the recovery of a subsample, induced by sending
/// each class to the subsample class containing its labels. Empty when the labels of one
/// class split or vanish in the subsample.
inline std::optional<std::vector<VertexIndex>> subsequence_vertex_map(const RecoveredCluster& full,
                                                                      const RecoveredCluster& sub) {
  std::map<std::string, VertexIndex> where;
  for (VertexIndex v = 0; v < sub.graph.size(); ++v)
    for (const auto& label : sub.classes[v]) where[label] = v;
  std::vector<VertexIndex> image(full.graph.size());
  for (VertexIndex v = 0; v < full.graph.size(); ++v) {
    if (v == full.graph.root()) {
      image[v] = sub.graph.root();
      for (const auto& label : full.classes[v])
        if (!where.count(label) || where[label] != sub.graph.root()) return std::nullopt;
      continue;
    }
    std::optional<VertexIndex> target;
    for (const auto& label : full.classes[v]) {
      auto it = where.find(label);
      if (it == where.end() || (target && *target != it->second)) return std::nullopt;
      target = it->second;
    }
    if (!target) return std::nullopt;
    image[v] = *target;
  }
  return image;
}

// ---------------------------------------------------------------------------
// Finite-scale diagnostics
// ---------------------------------------------------------------------------

/// min_k d(x_k, p) * prod_{k<l} d(x_k, x_l) / (max_k d(x_k, p))^(n(n-1)/2 + 1), with
/// F(p, ..., p) = 0. Evaluated in the log domain.
template <class Point, class Distance>
double eval_fn(std::span<const Point> points, const Point& p, Distance dist) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidInput("F_n needs at least two points");
  long double lo = 0, hi = 0;
  bool first = true;
  for (const auto& x : points) {
    long double d = static_cast<long double>(dist(x, p));
    lo = first ? d : std::min(lo, d);
    hi = first ? d : std::max(hi, d);
    first = false;
  }
  if (hi == 0 || lo == 0) return 0.0;
  long double log_value = std::log(lo);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      long double d = static_cast<long double>(dist(points[k], points[l]));
      if (d == 0) return 0.0;
      log_value += std::log(d);
    }
  }
  log_value -= static_cast<long double>(n * (n - 1) / 2 + 1) * std::log(hi);
  return static_cast<double>(std::exp(log_value));
}

/// eval_fn in sup-norm coordinate space.
inline double eval_fn(const std::vector<std::vector<double>>& points, const std::vector<double>& p) {
  return eval_fn(std::span<const std::vector<double>>(points), p,
                 [](const std::vector<double>& a, const std::vector<double>& b) { return sup_distance(a, b); });
}

struct PsiRow {
  double radius = 0;
  std::size_t points = 0;  // distinct cloud points inside the annulus
  double diameter = 0;
  double ratio = 0;  // diameter / radius
};

/// diam(A(p, r, k)) / r for each radius, A(p, r, k) = {x : r/k <= d(x, p) <= r k} taken over
/// every point of the cloud. An empty annulus has diameter 0.
inline std::vector<PsiRow> estimate_psi(const LeveledPointCloud& cloud, double k, const std::vector<double>& radii) {
  if (!(k >= 1)) throw InvalidInput("annulus factor k must be >= 1");
  std::vector<std::vector<double>> all;
  for (const auto& level : cloud.levels)
    for (const auto& p : level.points) all.push_back(p.coords);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<PsiRow> rows;
  for (double r : radii) {
    if (!(r > 0)) throw InvalidInput("annulus radius must be positive");
    std::vector<const std::vector<double>*> inside;
    for (const auto& x : all) {
      double d = sup_distance(x, cloud.basepoint);
      if (r / k <= d && d <= r * k) inside.push_back(&x);
    }
    double diam = 0;
    for (std::size_t a = 0; a < inside.size(); ++a)
      for (std::size_t b = a + 1; b < inside.size(); ++b) diam = std::max(diam, sup_distance(*inside[a], *inside[b]));
    rows.push_back({r, inside.size(), diam, diam / r});
  }
  return rows;
}

/// Heuristic: labels an unlabeled cloud by greedily chaining each point to the unused trace
/// whose normalized basepoint distance on the previous level is nearest. Not part of the
/// exact theory; use only when the producer did not label its sequences.
inline LeveledPointCloud match_by_basepoint_distance(LeveledPointCloud cloud) {
  if (cloud.levels.empty()) throw InvalidInput("cloud has no levels");
  std::vector<double> previous;
  for (auto& level : cloud.levels) {
    std::vector<double> current(level.points.size());
    for (std::size_t i = 0; i < level.points.size(); ++i)
      current[i] = sup_distance(level.points[i].coords, cloud.basepoint) / level.r;
    if (&level == &cloud.levels.front()) {
      std::vector<std::size_t> order(level.points.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return current[a] < current[b]; });
      std::vector<double> sorted(order.size());
      for (std::size_t t = 0; t < order.size(); ++t) {
        level.points[order[t]].label = "t" + std::to_string(t);
        sorted[t] = current[order[t]];
      }
      previous = sorted;
      continue;
    }
    if (level.points.size() != previous.size())
      throw InvalidInput("level " + std::to_string(level.n) + " has a different number of points");
    std::vector<char> taken(previous.size(), 0);
    std::vector<double> next(previous.size());
    for (std::size_t i = 0; i < level.points.size(); ++i) {
      std::size_t best = previous.size();
      for (std::size_t t = 0; t < previous.size(); ++t)
        if (!taken[t] && (best == previous.size() || std::fabs(previous[t] - current[i]) <
                                                         std::fabs(previous[best] - current[i])))
          best = t;
      taken[best] = 1;
      level.points[i].label = "t" + std::to_string(best);
      next[best] = current[i];
    }
    previous = next;
  }
  return cloud;
}

}  // namespace metric_cluster
