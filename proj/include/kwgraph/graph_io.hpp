#ifndef KWGRAPH_GRAPH_IO_HPP
#define KWGRAPH_GRAPH_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kwgraph/graph.hpp"

namespace kwgraph {

namespace detail {

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::Parse, context + ": missing field '" + key + "'");
  }
  if (!it->is_number()) {
    throw Error(ErrorKind::Parse, context + ": field '" + key + "' is not a number");
  }
  return it->get<double>();
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::Parse, context + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace detail

/// Parses the graph document without checking the Graph invariants.
///
/// Structural problems (bad JSON, missing fields, unknown or duplicate vertex
/// ids) still throw; positivity, loops, duplicates and connectivity are left
/// for validate().
inline Graph parse_graph_unchecked(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed graph document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorKind::Parse, "graph document needs a 'vertices' array");
  }
  const nlohmann::json empty_edges = nlohmann::json::array();
  const nlohmann::json& edges_json = doc.contains("edges") ? doc["edges"] : empty_edges;
  if (!edges_json.is_array()) {
    throw Error(ErrorKind::Parse, "'edges' must be an array");
  }

  std::vector<std::string> ids;
  std::vector<double> mu;
  std::vector<double> h;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object()) throw Error(ErrorKind::Parse, "vertex entry is not an object");
    std::string id = detail::require_string(v, "id", "vertex");
    const std::string ctx = "vertex '" + id + "'";
    mu.push_back(detail::require_number(v, "mu", ctx));
    h.push_back(detail::require_number(v, "h", ctx));
    if (!index.emplace(id, ids.size()).second) {
      throw Error(ErrorKind::Parse, "duplicate vertex id '" + id + "'");
    }
    ids.push_back(std::move(id));
  }

  std::vector<Edge> edges;
  for (const auto& e : edges_json) {
    if (!e.is_object()) throw Error(ErrorKind::Parse, "edge entry is not an object");
    const std::string a = detail::require_string(e, "u", "edge");
    const std::string b = detail::require_string(e, "v", "edge");
    const std::string ctx = "edge '" + a + "'-'" + b + "'";
    const double w = detail::require_number(e, "w", ctx);
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw Error(ErrorKind::Parse, "unknown vertex id '" + a + "' in edge");
    if (ib == index.end()) throw Error(ErrorKind::Parse, "unknown vertex id '" + b + "' in edge");
    edges.push_back({ia->second, ib->second, w});
  }
  return Graph(std::move(ids), std::move(mu), std::move(h), std::move(edges));
}

/// Parses and validates; any invariant violation is an error.
inline Graph parse_graph(std::string_view text) {
  Graph g = parse_graph_unchecked(text);
  auto violations = validate(g);
  if (!violations.empty()) {
    throw Error(ErrorKind::Validation, join_violations(violations));
  }
  return g;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::ordered_json graph_to_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < g.size(); ++x) {
    doc["vertices"].push_back({{"id", g.vertex_ids()[x]}, {"mu", g.mu(x)}, {"h", g.h(x)}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    doc["edges"].push_back(
        {{"u", g.vertex_ids()[e.i]}, {"v", g.vertex_ids()[e.j]}, {"w", e.w}});
  }
  return doc;
}

inline std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(); }

}  // namespace kwgraph

#endif  // KWGRAPH_GRAPH_IO_HPP
