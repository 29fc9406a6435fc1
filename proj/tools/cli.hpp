#pragma once

// Command-line front end. Exit status: 0 success or positive verdict, 1 negative verdict,
// 2 usage, input or I/O error.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <metric_cluster.hpp>
#include <metric_cluster/io.hpp>

namespace metric_cluster::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  int verbosity = 0;
};

namespace detail {

using io::Json;

inline void emit(Context& ctx, const Json& j) { ctx.out << j.dump(2) << "\n"; }

inline std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline std::string cycle_text(const WeightedRootedGraph& g, const Cycle& c) {
  std::vector<std::string> ws;
  for (const auto& w : cycle_weights(g, c)) ws.push_back(to_string(w));
  return join(vertex_names(g, c.vertices), "-") + " (weights " + join(ws, ", ") + ")";
}

inline void print_matrix(Context& ctx, const DistanceMatrix& d) {
  std::vector<std::vector<std::string>> cells(d.size() + 1, std::vector<std::string>(d.size() + 1));
  for (std::size_t i = 0; i < d.size(); ++i) {
    cells[0][i + 1] = d.name(i);
    cells[i + 1][0] = d.name(i);
    for (std::size_t j = 0; j < d.size(); ++j) cells[i + 1][j + 1] = to_string(d(i, j));
  }
  std::vector<std::size_t> width(d.size() + 1, 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) ctx.out << (j ? "  " : "") << std::setw(static_cast<int>(width[j])) << row[j];
    ctx.out << "\n";
  }
}

inline void print_graph(Context& ctx, const WeightedRootedGraph& g) {
  ctx.out << "root " << g.name(g.root()) << ", " << g.size() << " vertices, " << g.edge_count() << " edges\n";
  for (const auto& e : g.edges()) ctx.out << "  " << g.name(e.u) << " -- " << g.name(e.v) << "  " << to_string(e.weight) << "\n";
}

inline void output_graph(Context& ctx, const WeightedRootedGraph& g, const std::string& out_path) {
  if (!out_path.empty()) {
    io::write_json_file(out_path, io::to_json(g));
    if (ctx.verbosity > 0) ctx.err << "wrote " << out_path << "\n";
  } else if (ctx.json) {
    emit(ctx, io::to_json(g));
  } else {
    print_graph(ctx, g);
  }
}

inline std::pair<VertexIndex, VertexIndex> pair_of(const WeightedRootedGraph& g, const std::string& a,
                                                   const std::string& b) {
  return {g.index(a), g.index(b)};
}

inline std::vector<double> parse_point(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InvalidInput("bad coordinate '" + part + "' in point '" + text + "'");
    }
  }
  if (xs.empty()) throw InvalidInput("empty point");
  return xs;
}

// ---------------------------------------------------------------------------

inline int cmd_check(Context& ctx, const std::string& path) {
  auto g = io::read_graph(path);
  auto v = check_metrizable(g);
  if (ctx.json) {
    emit(ctx, io::to_json(g, v));
  } else {
    ctx.out << to_string(v.classification) << "\n";
    if (v.violating_cycle) ctx.out << "violating cycle: " << cycle_text(g, *v.violating_cycle) << "\n";
    if (v.zero_edge) ctx.out << "zero-weight edge: " << g.name(v.zero_edge->first) << " -- " << g.name(v.zero_edge->second) << "\n";
  }
  return v.classification == Metrizability::Metrizable ? kOk : kNegative;
}

inline int cmd_spm(Context& ctx, const std::string& path, const std::string& out_path) {
  auto d = shortest_path_metric(io::read_graph(path));
  if (!out_path.empty())
    io::write_json_file(out_path, io::to_json(d));
  else if (ctx.json)
    emit(ctx, io::to_json(d));
  else
    print_matrix(ctx, d);
  return kOk;
}

inline int cmd_interval(Context& ctx, const std::string& path, const std::string& a, const std::string& b) {
  auto g = io::read_graph(path);
  auto [u, v] = pair_of(g, a, b);
  auto i = admissible_interval(g, u, v);
  if (ctx.json) {
    Json j = io::to_json(i);
    j["u"] = g.name(u);
    j["v"] = g.name(v);
    j["degenerate"] = i.degenerate();
    emit(ctx, j);
  } else {
    ctx.out << to_string(i) << (i.degenerate() ? "  (distance forced)" : "") << "\n";
  }
  return kOk;
}

inline int cmd_extend(Context& ctx, const std::string& path, const std::string& a, const std::string& b,
                      const std::string& t, const std::string& out_path) {
  auto g = io::read_graph(path);
  auto [u, v] = pair_of(g, a, b);
  auto d = extend_metric(g, u, v, parse_rational(t));
  if (!out_path.empty())
    io::write_json_file(out_path, io::to_json(d));
  else if (ctx.json)
    emit(ctx, io::to_json(d));
  else
    print_matrix(ctx, d);
  return kOk;
}

inline int cmd_complete(Context& ctx, const std::string& path, const std::string& out_path) {
  auto g = io::read_graph(path);
  auto forced = unique_pairs(g);
  auto h = hat_completion(g);
  if (ctx.verbosity > 0 || (!ctx.json && out_path.empty())) {
    std::ostream& s = out_path.empty() && !ctx.json ? ctx.out : ctx.err;
    s << forced.size() << " forced pair(s)";
    for (auto [x, y] : forced) s << "  " << g.name(x) << "~" << g.name(y) << "=" << to_string(h.weight(x, y));
    s << "\n";
  }
  output_graph(ctx, h, out_path);
  return kOk;
}

inline int cmd_embed(Context& ctx, const std::string& path, const std::string& mode) {
  auto g = io::read_graph(path);
  Cycle c = cycle_of(g);
  bool line = mode == "line" || (mode == "auto" && is_tight(g, c));
  std::vector<std::string> names;
  std::vector<Rational> coords;
  const DistanceMatrix* metric = nullptr;
  std::optional<LineEmbedding> le;
  std::optional<CircleEmbedding> ce;
  if (line) {
    le = embed_tight_cycle_on_line(g, c);
    names = vertex_names(g, le->order);
    coords = le->coordinates;
    metric = &le->metric;
  } else {
    ce = embed_cycle_on_circle(g, c);
    names = vertex_names(g, ce->order);
    coords = ce->positions;
    metric = &ce->metric;
  }
  if (ctx.json) {
    Json pos = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) pos[names[i]] = to_string(coords[i]);
    Json j{{"kind", line ? "line" : "circle"}, {"order", names}, {"coordinates", pos}};
    if (ce) j["circumference"] = to_string(ce->circumference);
    j["metric"] = io::to_json(*metric);
    emit(ctx, j);
  } else {
    ctx.out << (line ? "line" : "circle");
    if (ce) ctx.out << " of circumference " << to_string(ce->circumference);
    ctx.out << "\n";
    for (std::size_t i = 0; i < names.size(); ++i) ctx.out << "  " << names[i] << "  " << to_string(coords[i]) << "\n";
  }
  return kOk;
}

inline int cmd_cliques(Context& ctx, const std::string& path) {
  auto g = io::read_graph(path);
  auto cs = maximal_cliques(g);
  if (ctx.json) {
    Json arr = Json::array();
    for (const auto& c : cs) arr.push_back(vertex_names(g, c));
    emit(ctx, Json{{"count", cs.size()}, {"cliques", arr}});
  } else {
    ctx.out << cs.size() << " maximal clique(s)\n";
    for (const auto& c : cs) ctx.out << "  {" << join(vertex_names(g, c), ", ") << "}\n";
  }
  return kOk;
}

inline int cmd_isomorphic(Context& ctx, const std::string& a, const std::string& b, bool unweighted,
                          double rel_tol) {
  auto g1 = io::read_graph(a);
  auto g2 = io::read_graph(b);
  WeightMatch match = unweighted ? WeightMatch::ignore() : rel_tol > 0 ? WeightMatch::relative(rel_tol) : WeightMatch::exact();
  auto f = isomorphic(g1, g2, match);
  if (ctx.json) {
    Json j{{"isomorphic", f.has_value()}};
    if (f) {
      Json m = Json::object();
      for (VertexIndex v = 0; v < g1.size(); ++v) m[g1.name(v)] = g2.name(f->image[v]);
      j["mapping"] = m;
    }
    emit(ctx, j);
  } else if (f) {
    ctx.out << "isomorphic\n";
    for (VertexIndex v = 0; v < g1.size(); ++v) ctx.out << "  " << g1.name(v) << " -> " << g2.name(f->image[v]) << "\n";
  } else {
    ctx.out << "not isomorphic\n";
  }
  return f ? kOk : kNegative;
}

inline int cmd_fpc_certify(Context& ctx, const std::string& path) {
  auto g = io::read_graph(path);
  auto c = certify_fpc(g);
  if (ctx.json) {
    emit(ctx, io::to_json(g, c));
  } else if (c.pass) {
    ctx.out << "pass\n";
  } else {
    ctx.out << "fail: " << to_string(*c.failure) << "\n";
    if (c.pair) ctx.out << "  pair: " << g.name(c.pair->first) << ", " << g.name(c.pair->second) << "\n";
    if (c.cycle) ctx.out << "  cycle: " << cycle_text(g, *c.cycle) << "\n";
    if (c.missing_edge)
      ctx.out << "  missing edge: " << g.name(c.missing_edge->first) << " -- " << g.name(c.missing_edge->second) << "\n";
  }
  return c.pass ? kOk : kNegative;
}

inline int cmd_fpc_bound(Context& ctx, const std::string& path) {
  auto r = clique_bound_check(io::read_graph(path));
  if (ctx.json)
    emit(ctx, io::to_json(r));
  else
    ctx.out << r.clique_count << " maximal clique(s) of G - root, bound " << r.bound << (r.holds ? " (holds)" : " (VIOLATED)")
            << "\n";
  return r.holds ? kOk : kNegative;
}

struct RealizeArgs {
  std::string graph;
  std::size_t depth = 12;
  std::string scaling = "factorial";
  unsigned base = 2;
  bool single_point = false;
  unsigned q = 2;
  std::string out;
};

inline int cmd_realize(Context& ctx, const RealizeArgs& a) {
  LeveledPointCloud cloud;
  if (a.single_point) {
    cloud = single_point_space(a.depth, a.q);
  } else {
    if (a.graph.empty()) throw InvalidInput("realize needs a graph file or --single-point");
    ScalingRule rule = a.scaling == "factorial" ? ScalingRule::factorial() : ScalingRule::power_of_square(a.base);
    auto plan = build_plan(io::read_graph(a.graph), a.depth, rule);
    for (const auto& w : plan.warnings) ctx.err << "warning: " << w << "\n";
    if (ctx.verbosity > 0) {
      ctx.err << "family of " << plan.period() << " metric(s), " << plan.non_edges.size() << " non-edge(s)\n";
      for (std::size_t i = 0; i < plan.non_edges.size(); ++i)
        ctx.err << "  " << plan.graph.name(plan.non_edges[i].first) << "~" << plan.graph.name(plan.non_edges[i].second)
                << " in " << to_string(plan.intervals[i]) << ": " << to_string(plan.lower_targets[i]) << " / "
                << to_string(plan.upper_targets[i]) << "\n";
    }
    cloud = generate_cloud(plan);
  }
  if (!a.out.empty())
    io::write_json_file(a.out, io::to_json(cloud));
  else
    emit(ctx, io::to_json(cloud));
  return kOk;
}

struct RecoverArgs {
  std::string cloud;
  std::string out;
  std::string diagnostics;
  std::optional<std::size_t> window;
  double tol_rel = RecoveryOptions{}.tol_rel;
  double tol_abs = RecoveryOptions{}.tol_abs;
  bool exact = false;
  bool match = false;
};

inline int cmd_recover(Context& ctx, const RecoverArgs& a) {
  auto cloud = io::read_cloud(a.cloud);
  if (a.match) cloud = match_by_basepoint_distance(std::move(cloud));
  RecoveryOptions opt;
  opt.tol_rel = a.tol_rel;
  opt.tol_abs = a.tol_abs;
  opt.window = a.window;
  opt.exact = a.exact;
  auto c = recover_cluster(cloud, opt);
  for (const auto& w : c.warnings) ctx.err << "warning: " << w << "\n";
  if (!a.diagnostics.empty()) io::write_json_file(a.diagnostics, io::diagnostics_json(c));
  if (a.out.empty() && ctx.json) {
    emit(ctx, Json{{"graph", io::to_json(c.graph)}, {"diagnostics", io::diagnostics_json(c)}});
  } else {
    output_graph(ctx, c.graph, a.out);
    if (a.out.empty() || ctx.verbosity > 0) {
      std::ostream& s = a.out.empty() ? ctx.out : ctx.err;
      for (VertexIndex v = 0; v < c.graph.size(); ++v)
        s << "  rho0(" << c.graph.name(v) << ") = " << to_string(c.rho0[v]) << "  {" << join(c.classes[v], ", ") << "}\n";
    }
  }
  return kOk;
}

inline int cmd_subsample(Context& ctx, const std::string& path, const std::vector<std::size_t>& levels,
                         std::size_t first, std::size_t stride, const std::string& out_path) {
  auto cloud = io::read_cloud(path);
  auto chosen = levels.empty() ? strided_levels(cloud, first, stride) : levels;
  auto sub = subsample_levels(cloud, chosen);
  if (!out_path.empty())
    io::write_json_file(out_path, io::to_json(sub));
  else
    emit(ctx, io::to_json(sub));
  return kOk;
}

inline int cmd_diag_fn(Context& ctx, const std::vector<std::string>& point_texts, const std::string& base_text,
                       const std::string& cloud_path, std::size_t level) {
  std::vector<std::vector<double>> pts;
  std::vector<double> base;
  if (!cloud_path.empty()) {
    auto cloud = io::read_cloud(cloud_path);
    auto it = std::find_if(cloud.levels.begin(), cloud.levels.end(), [&](const CloudLevel& l) { return l.n == level; });
    if (it == cloud.levels.end()) throw InvalidInput("cloud has no level " + std::to_string(level));
    for (const auto& p : it->points) pts.push_back(p.coords);
    base = cloud.basepoint;
  } else {
    for (const auto& t : point_texts) pts.push_back(parse_point(t));
    base = base_text.empty() ? std::vector<double>(pts.empty() ? 1 : pts.front().size(), 0.0) : parse_point(base_text);
  }
  for (const auto& p : pts)
    if (p.size() != base.size()) throw InvalidInput("points and basepoint differ in dimension");
  double v = eval_fn(pts, base);
  if (ctx.json)
    emit(ctx, Json{{"n", pts.size()}, {"value", v}});
  else
    ctx.out << std::setprecision(17) << v << "\n";
  return kOk;
}

inline int cmd_diag_psi(Context& ctx, const std::string& path, double k, std::vector<double> radii, bool at_levels) {
  auto cloud = io::read_cloud(path);
  if (at_levels)
    for (const auto& l : cloud.levels) radii.push_back(l.r);
  if (radii.empty()) throw InvalidInput("diag psi needs --radius or --at-levels");
  auto rows = estimate_psi(cloud, k, radii);
  if (ctx.json) {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"r", r.radius}, {"points", r.points}, {"diameter", r.diameter}, {"ratio", r.ratio}});
    emit(ctx, Json{{"k", k}, {"rows", arr}});
  } else {
    ctx.out << std::setprecision(10);
    for (const auto& r : rows)
      ctx.out << "r = " << r.radius << "  points " << r.points << "  diam/r = " << r.ratio << "\n";
  }
  return kOk;
}

inline WeightedRootedGraph demo_cycle(const std::vector<std::string>& weights) {
  return WeightedRootedGraph({"v1", "v2", "v3", "v4"}, "v1",
                             {{"v1", "v2", parse_rational(weights[0])},
                              {"v2", "v3", parse_rational(weights[1])},
                              {"v3", "v4", parse_rational(weights[2])},
                              {"v4", "v1", parse_rational(weights[3])}});
}

/// Writes the worked examples plus the outputs they are expected to produce.
inline int cmd_demo(Context& ctx, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput(dir + ": " + ec.message());
  const auto at = [&](const char* name) { return (fs::path(dir) / name).string(); };

  auto cycle = demo_cycle({"1", "2", "3", "4"});
  io::write_json_file(at("cycle4_abck.json"), io::to_json(cycle));
  io::write_json_file(at("cycle4_abck.interval_v1_v3.json"),
                      io::to_json(admissible_interval(cycle, cycle.index("v1"), cycle.index("v3"))));
  io::write_json_file(at("cycle4_abck.interval_v2_v4.json"),
                      io::to_json(admissible_interval(cycle, cycle.index("v2"), cycle.index("v4"))));

  auto tight = demo_cycle({"1", "1", "1", "3"});
  io::write_json_file(at("tight4.json"), io::to_json(tight));
  auto line = embed_tight_cycle_on_line(tight, cycle_of(tight));
  Json coords = Json::object();
  for (std::size_t i = 0; i < line.order.size(); ++i) coords[tight.name(line.order[i])] = to_string(line.coordinates[i]);
  io::write_json_file(at("tight4.embed.json"), Json{{"kind", "line"}, {"coordinates", coords}});

  auto single = single_point_space(12, 2);
  io::write_json_file(at("single_point.json"), io::to_json(single));
  auto rec = recover_cluster(single, RecoveryOptions{1e-6, 1e-3, 3, false});
  io::write_json_file(at("single_point.expected.json"), io::to_json(rec.graph));

  if (ctx.json)
    emit(ctx, Json{{"directory", dir},
                   {"files", {"cycle4_abck.json", "cycle4_abck.interval_v1_v3.json", "cycle4_abck.interval_v2_v4.json",
                              "tight4.json", "tight4.embed.json", "single_point.json", "single_point.expected.json"}}});
  else
    ctx.out << "wrote 7 files to " << dir << "\n";
  return kOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Clusters of pretangent spaces at infinity: metrizability, certification, realization, recovery."};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out, err};
  app.add_flag("--json", ctx.json, "Machine-readable JSON output");
  app.add_flag("-v,--verbose", ctx.verbosity, "More diagnostics on stderr");

  std::string g1, g2, u, v, t, out_path, mode = "auto";
  auto* check = app.add_subcommand("check", "Metrizability verdict with a witness cycle");
  check->add_option("graph", g1, "Graph JSON")->required();

  auto* spm = app.add_subcommand("spm", "Shortest-path pseudometric");
  spm->add_option("graph", g1)->required();
  spm->add_option("-o,--out", out_path);

  auto* interval = app.add_subcommand("interval", "Admissible distances for a non-adjacent pair");
  interval->add_option("graph", g1)->required();
  interval->add_option("u", u)->required();
  interval->add_option("v", v)->required();

  auto* extend = app.add_subcommand("extend", "Metric after adding the edge {u, v} with weight t");
  extend->add_option("graph", g1)->required();
  extend->add_option("u", u)->required();
  extend->add_option("v", v)->required();
  extend->add_option("t", t)->required();
  extend->add_option("-o,--out", out_path);

  auto* complete = app.add_subcommand("complete", "Add every pair whose distance is forced");
  complete->add_option("graph", g1)->required();
  complete->add_option("-o,--out", out_path);

  auto* embed = app.add_subcommand("embed", "Embed a cycle graph on a circle, or a tight one on a line");
  embed->add_option("graph", g1)->required();
  embed->add_option("--mode", mode)->check(CLI::IsMember({"auto", "line", "circle"}));

  auto* cliques = app.add_subcommand("cliques", "Maximal cliques");
  cliques->add_option("graph", g1)->required();

  bool unweighted = false;
  double rel_tol = 0;
  auto* iso = app.add_subcommand("isomorphic", "Rooted weighted isomorphism test");
  iso->add_option("first", g1)->required();
  iso->add_option("second", g2)->required();
  iso->add_flag("--unweighted", unweighted);
  iso->add_option("--rel-tol", rel_tol, "Relative weight tolerance (default exact)")->check(CLI::NonNegativeNumber);

  auto* fpc = app.add_subcommand("fpc", "Cluster-graph certification tools");
  fpc->require_subcommand(1);
  auto* certify = fpc->add_subcommand("certify", "Decide whether a graph can be a cluster at infinity");
  certify->add_option("graph", g1)->required();
  auto* synth = fpc->add_subcommand("synthesize", "Weights 1 + j/(m+1) on a dominating-root shape");
  synth->add_option("graph", g1)->required();
  synth->add_option("-o,--out", out_path);
  std::string root;
  auto* from_metric = fpc->add_subcommand("from-metric", "Complete graph over a finite metric space");
  from_metric->add_option("metric", g1, "Distance matrix JSON")->required();
  from_metric->add_option("--root", root)->required();
  from_metric->add_option("-o,--out", out_path);
  auto* bound = fpc->add_subcommand("bound", "Maximal cliques of G - root against f(|V| - 1)");
  bound->add_option("graph", g1)->required();
  std::size_t f_n = 0;
  auto* f = fpc->add_subcommand("f", "Maximum number of maximal cliques on n vertices");
  f->add_option("n", f_n)->required();

  detail::RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "Leveled point cloud whose cluster is the given graph");
  realize->add_option("graph", ra.graph);
  realize->add_option("--depth", ra.depth)->check(CLI::PositiveNumber);
  realize->add_option("--scaling", ra.scaling)->check(CLI::IsMember({"factorial", "power-square"}));
  realize->add_option("--base", ra.base, "Base b of r_n = b^(n^2)")->check(CLI::Range(2u, 1u << 20));
  realize->add_flag("--single-point", ra.single_point, "The line {0} U {q^(n^2)} instead of a graph");
  realize->add_option("--q", ra.q)->check(CLI::Range(2u, 1u << 20));
  realize->add_option("-o,--out", ra.out);

  detail::RecoverArgs rc;
  auto* recover = app.add_subcommand("recover", "Cluster graph of a labeled leveled cloud");
  recover->add_option("cloud", rc.cloud)->required();
  recover->add_option("-o,--out", rc.out);
  recover->add_option("--diagnostics", rc.diagnostics, "Write per-pair diagnostics JSON here");
  recover->add_option("--window", rc.window)->check(CLI::PositiveNumber);
  recover->add_option("--tol-rel", rc.tol_rel)->check(CLI::NonNegativeNumber);
  recover->add_option("--tol-abs", rc.tol_abs)->check(CLI::NonNegativeNumber);
  recover->add_flag("--exact", rc.exact, "Use the rational shadows, zero tolerance");
  recover->add_flag("--match", rc.match, "Label points heuristically by basepoint distance first");

  std::vector<std::size_t> levels;
  std::size_t first = 1, stride = 1;
  auto* subsample = app.add_subcommand("subsample", "Restrict a cloud to some levels");
  subsample->add_option("cloud", g1)->required();
  auto* levels_opt = subsample->add_option("--levels", levels)->delimiter(',');
  subsample->add_option("--first", first)->excludes(levels_opt);
  subsample->add_option("--stride", stride)->excludes(levels_opt)->check(CLI::PositiveNumber);
  subsample->add_option("-o,--out", out_path);

  auto* diag = app.add_subcommand("diag", "Finite-scale diagnostics");
  diag->require_subcommand(1);
  std::vector<std::string> points;
  std::string base_text;
  std::size_t level = 0;
  auto* fn = diag->add_subcommand("fn", "F_n on explicit points (sup norm) or on one cloud level");
  fn->add_option("--point", points, "Comma-separated coordinates; repeat per point");
  fn->add_option("--base", base_text, "Basepoint (default origin)");
  auto* fn_cloud = fn->add_option("--cloud", g1);
  fn->add_option("--level", level)->needs(fn_cloud);
  double k = 2;
  std::vector<double> radii;
  bool at_levels = false;
  auto* psi = diag->add_subcommand("psi", "diam(A(p, r, k)) / r over a cloud");
  psi->add_option("cloud", g1)->required();
  psi->add_option("--k", k)->check(CLI::Range(1.0, 1e300));
  psi->add_option("--radius", radii)->delimiter(',');
  psi->add_flag("--at-levels", at_levels, "Also use every scaling value r_n as a radius");

  std::string dir;
  auto* demo = app.add_subcommand("demo", "Write the worked examples as JSON fixtures");
  demo->add_option("dir", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    using namespace detail;
    if (check->parsed()) return cmd_check(ctx, g1);
    if (spm->parsed()) return cmd_spm(ctx, g1, out_path);
    if (interval->parsed()) return cmd_interval(ctx, g1, u, v);
    if (extend->parsed()) return cmd_extend(ctx, g1, u, v, t, out_path);
    if (complete->parsed()) return cmd_complete(ctx, g1, out_path);
    if (embed->parsed()) return cmd_embed(ctx, g1, mode);
    if (cliques->parsed()) return cmd_cliques(ctx, g1);
    if (iso->parsed()) return cmd_isomorphic(ctx, g1, g2, unweighted, rel_tol);
    if (certify->parsed()) return cmd_fpc_certify(ctx, g1);
    if (synth->parsed()) {
      output_graph(ctx, synthesize_weights(io::read_graph(g1)), out_path);
      return kOk;
    }
    if (from_metric->parsed()) {
      output_graph(ctx, graph_from_metric_space(io::read_distance_matrix(g1), root), out_path);
      return kOk;
    }
    if (bound->parsed()) return cmd_fpc_bound(ctx, g1);
    if (f->parsed()) {
      auto value = moon_moser_f(f_n);
      if (ctx.json)
        emit(ctx, Json{{"n", f_n}, {"f", value}});
      else
        out << value << "\n";
      return kOk;
    }
    if (realize->parsed()) return cmd_realize(ctx, ra);
    if (recover->parsed()) return cmd_recover(ctx, rc);
    if (subsample->parsed()) return cmd_subsample(ctx, g1, levels, first, stride, out_path);
    if (fn->parsed()) return cmd_diag_fn(ctx, points, base_text, g1, level);
    if (psi->parsed()) return cmd_diag_psi(ctx, g1, k, radii, at_levels);
    if (demo->parsed()) return cmd_demo(ctx, dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace metric_cluster::cli
