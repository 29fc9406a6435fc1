#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "distance_matrix.hpp"
#include "errors.hpp"
#include "fpc.hpp"
#include "graph.hpp"
#include "metrization.hpp"
#include "realization.hpp"
#include "recovery.hpp"

namespace metric_cluster::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

// Weights and distances: rational strings, or plain JSON integers.
inline Rational rational_at(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
  throw InvalidInput(where + ": expected a rational string such as \"3/2\"");
}

inline double number_at(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      std::size_t used = 0;
      double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    try {
      return to_double(parse_rational(s));
    } catch (const InvalidInput&) {
    }
  }
  throw InvalidInput(where + ": expected a number");
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Parses a JSON document; syntax errors name the source and the byte offset.
inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(path + ": cannot open for writing");
  out << text;
  if (!out) throw InvalidInput(path + ": write failed");
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

inline Json to_json(const WeightedRootedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", g.name(e.u)}, {"v", g.name(e.v)}, {"w", to_string(e.weight)}});
  return {{"vertices", Json(std::vector<std::string>(g.names().begin(), g.names().end()))},
          {"root", g.name(g.root())},
          {"edges", edges}};
}

inline WeightedRootedGraph graph_from_json(const Json& j, const std::string& where = "graph") {
  auto vertices = detail::string_list(detail::field(j, "vertices", where), where + "/vertices");
  auto root = detail::string_at(detail::field(j, "root", where), where + "/root");
  std::vector<WeightedRootedGraph::EdgeSpec> edges;
  if (j.contains("edges")) {
    const Json& es = j["edges"];
    if (!es.is_array()) throw InvalidInput(where + "/edges: expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string at = where + "/edges/" + std::to_string(i);
      edges.push_back({detail::string_at(detail::field(es[i], "u", at), at + "/u"),
                       detail::string_at(detail::field(es[i], "v", at), at + "/v"),
                       detail::rational_at(detail::field(es[i], "w", at), at + "/w")});
    }
  }
  try {
    return WeightedRootedGraph(std::move(vertices), root, edges);
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

inline WeightedRootedGraph read_graph(const std::string& path) { return graph_from_json(read_json_file(path), path); }

// ---------------------------------------------------------------------------
// Distance matrices, intervals, embeddings
// ---------------------------------------------------------------------------

inline Json to_json(const DistanceMatrix& d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d.size(); ++j) row.push_back(to_string(d(i, j)));
    rows.push_back(row);
  }
  return {{"vertices", Json(std::vector<std::string>(d.names().begin(), d.names().end()))}, {"matrix", rows}};
}

/// "matrix" may be nested rows or one flat row-major array.
inline DistanceMatrix distance_matrix_from_json(const Json& j, const std::string& where = "metric") {
  auto names = detail::string_list(detail::field(j, "vertices", where), where + "/vertices");
  const Json& m = detail::field(j, "matrix", where);
  if (!m.is_array()) throw InvalidInput(where + "/matrix: expected an array");
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string at = where + "/matrix/" + std::to_string(i);
    if (m[i].is_array()) {
      if (m[i].size() != names.size()) throw InvalidInput(at + ": row has the wrong length");
      for (std::size_t k = 0; k < m[i].size(); ++k)
        flat.push_back(detail::rational_at(m[i][k], at + "/" + std::to_string(k)));
    } else {
      flat.push_back(detail::rational_at(m[i], at));
    }
  }
  try {
    return DistanceMatrix(std::move(names), flat);
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

inline DistanceMatrix read_distance_matrix(const std::string& path) {
  return distance_matrix_from_json(read_json_file(path), path);
}

inline Json to_json(const IntervalQ& i) { return {{"lo", to_string(i.lo)}, {"hi", to_string(i.hi)}}; }

inline Json names_json(const WeightedRootedGraph& g, std::span<const VertexIndex> vs) {
  return Json(vertex_names(g, vs));
}

inline Json to_json(const WeightedRootedGraph& g, const MetrizabilityVerdict& v) {
  Json j{{"classification", to_string(v.classification)}};
  if (v.violating_cycle) {
    j["cycle"] = names_json(g, v.violating_cycle->vertices);
    Json ws = Json::array();
    for (const auto& w : cycle_weights(g, *v.violating_cycle)) ws.push_back(to_string(w));
    j["cycle_weights"] = ws;
  }
  if (v.zero_edge) j["zero_edge"] = {g.name(v.zero_edge->first), g.name(v.zero_edge->second)};
  return j;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

inline Json to_json(const WeightedRootedGraph& g, const FpcCertificate& c) {
  Json j{{"pass", c.pass}};
  if (c.pass) return j;
  j["condition"] = to_string(*c.failure);
  Json w = Json::object();
  if (c.pair) w["pair"] = {g.name(c.pair->first), g.name(c.pair->second)};
  if (c.failure == FpcFailure::LabelingNotInjective && c.pair) w["label"] = to_string(g.weight(g.root(), c.pair->first));
  if (c.cycle) {
    w["cycle"] = names_json(g, c.cycle->vertices);
    Json ws = Json::array();
    for (const auto& x : cycle_weights(g, *c.cycle)) ws.push_back(to_string(x));
    w["cycle_weights"] = ws;
  }
  if (c.missing_edge) w["missing_edge"] = {g.name(c.missing_edge->first), g.name(c.missing_edge->second)};
  j["witness"] = w;
  return j;
}

inline Json to_json(const CliqueBoundReport& r) {
  return {{"vertices", r.vertices}, {"clique_count", r.clique_count}, {"bound", r.bound},
          {"holds", r.holds},       {"slack", r.slack}};
}

// ---------------------------------------------------------------------------
// Point clouds
// ---------------------------------------------------------------------------

inline Json to_json(const LeveledPointCloud& cloud) {
  Json levels = Json::array();
  for (const auto& level : cloud.levels) {
    Json points = Json::array();
    for (const auto& p : level.points) points.push_back({{"label", p.label}, {"coords", p.coords}});
    Json l{{"n", level.n}, {"r", detail::format_double(level.r)}, {"points", points}};
    // Exact shadows are written only when every point of the level has one.
    bool coords_exact = !level.points.empty();
    for (const auto& p : level.points) coords_exact = coords_exact && p.exact.has_value();
    if (level.r_exact || coords_exact) {
      Json e = Json::object();
      if (level.r_exact) e["r"] = to_string(*level.r_exact);
      if (coords_exact) {
        Json ep = Json::object();
        for (const auto& p : level.points) {
          Json cs = Json::array();
          for (const auto& c : *p.exact) cs.push_back(to_string(c));
          ep[p.label] = cs;
        }
        e["points"] = ep;
      }
      l["exact"] = e;
    }
    levels.push_back(l);
  }
  Json j{{"norm", "sup"}, {"dimension", cloud.dimension}, {"basepoint", cloud.basepoint}, {"levels", levels}};
  if (cloud.period) j["period"] = *cloud.period;
  return j;
}

inline LeveledPointCloud cloud_from_json(const Json& j, const std::string& where = "cloud") {
  LeveledPointCloud cloud;
  if (j.contains("norm") && j["norm"] != "sup") throw InvalidInput(where + "/norm: only \"sup\" is supported");
  const Json& dim = detail::field(j, "dimension", where);
  if (!dim.is_number_unsigned()) throw InvalidInput(where + "/dimension: expected a non-negative integer");
  cloud.dimension = dim.get<std::size_t>();
  if (j.contains("basepoint")) {
    const Json& b = j["basepoint"];
    if (!b.is_array() || b.size() != cloud.dimension)
      throw InvalidInput(where + "/basepoint: expected " + std::to_string(cloud.dimension) + " numbers");
    for (std::size_t i = 0; i < b.size(); ++i)
      cloud.basepoint.push_back(detail::number_at(b[i], where + "/basepoint/" + std::to_string(i)));
  } else {
    cloud.basepoint.assign(cloud.dimension, 0.0);
  }
  if (j.contains("period")) {
    if (!j["period"].is_number_unsigned() || j["period"].get<std::size_t>() == 0)
      throw InvalidInput(where + "/period: expected a positive integer");
    cloud.period = j["period"].get<std::size_t>();
  }
  const Json& levels = detail::field(j, "levels", where);
  if (!levels.is_array()) throw InvalidInput(where + "/levels: expected an array");
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const std::string at = where + "/levels/" + std::to_string(li);
    const Json& l = levels[li];
    CloudLevel level;
    const Json& n = detail::field(l, "n", at);
    if (!n.is_number_unsigned()) throw InvalidInput(at + "/n: expected a non-negative integer");
    level.n = n.get<std::size_t>();
    if (li > 0 && level.n <= cloud.levels.back().n) throw InvalidInput(at + "/n: levels must be increasing");
    level.r = detail::number_at(detail::field(l, "r", at), at + "/r");
    const Json& pts = detail::field(l, "points", at);
    if (!pts.is_array()) throw InvalidInput(at + "/points: expected an array");
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
      const std::string pat = at + "/points/" + std::to_string(pi);
      CloudPoint p;
      if (pts[pi].contains("label")) p.label = detail::string_at(pts[pi]["label"], pat + "/label");
      const Json& cs = detail::field(pts[pi], "coords", pat);
      if (!cs.is_array() || cs.size() != cloud.dimension)
        throw InvalidInput(pat + "/coords: expected " + std::to_string(cloud.dimension) + " numbers");
      for (std::size_t k = 0; k < cs.size(); ++k)
        p.coords.push_back(detail::number_at(cs[k], pat + "/coords/" + std::to_string(k)));
      level.points.push_back(std::move(p));
    }
    if (l.contains("exact")) {
      const Json& e = l["exact"];
      if (e.contains("r")) level.r_exact = detail::rational_at(e["r"], at + "/exact/r");
      if (e.contains("points")) {
        for (auto& p : level.points) {
          const std::string pat = at + "/exact/points/" + p.label;
          if (!e["points"].contains(p.label)) throw InvalidInput(pat + ": missing exact coordinates");
          const Json& cs = e["points"][p.label];
          if (!cs.is_array() || cs.size() != cloud.dimension)
            throw InvalidInput(pat + ": expected " + std::to_string(cloud.dimension) + " rationals");
          std::vector<Rational> xs;
          for (std::size_t k = 0; k < cs.size(); ++k)
            xs.push_back(detail::rational_at(cs[k], pat + "/" + std::to_string(k)));
          p.exact = std::move(xs);
        }
      }
    }
    cloud.levels.push_back(std::move(level));
  }
  return cloud;
}

inline LeveledPointCloud read_cloud(const std::string& path) { return cloud_from_json(read_json_file(path), path); }

// ---------------------------------------------------------------------------
// Recovery output
// ---------------------------------------------------------------------------

inline Json to_json(const TailStats& s) {
  return {{"mean", s.mean}, {"liminf", s.liminf}, {"limsup", s.limsup}, {"spread", s.spread}};
}

/// Everything recover_cluster computed besides the graph itself.
inline Json diagnostics_json(const RecoveredCluster& c) {
  const auto& g = c.graph;
  Json rho = Json::object(), rho_raw = Json::object(), classes = Json::object();
  for (VertexIndex v = 0; v < g.size(); ++v) {
    rho[g.name(v)] = to_string(c.rho0[v]);
    rho_raw[g.name(v)] = c.rho0_raw[v];
    classes[g.name(v)] = c.classes[v];
  }
  Json raw = Json::array();
  for (const auto& [e, w] : c.raw_weights) raw.push_back({{"u", g.name(e.first)}, {"v", g.name(e.second)}, {"w", w}});
  Json traces = Json::array();
  for (const auto& t : c.traces)
    traces.push_back({{"label", t.label}, {"status", to_string(t.status)}, {"basepoint", to_json(t.basepoint)}});
  Json pairs = Json::array();
  for (const auto& p : c.pairs)
    pairs.push_back({{"a", p.a}, {"b", p.b}, {"relation", to_string(p.relation)}, {"distance", to_json(p.distance)}});
  return {{"root", g.name(g.root())}, {"rho0", rho},           {"rho0_raw", rho_raw},
          {"classes", classes},       {"raw_weights", raw},    {"window_levels", c.window_levels},
          {"zero_threshold", c.zero_threshold},                {"traces", traces},
          {"pairs", pairs},           {"merge_log", c.merge_log}, {"warnings", c.warnings}};
}

}  // namespace metric_cluster::io
