#include "specmix/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace specmix {

WeightedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num_vertices") || !j.contains("edges")) {
    throw Error(ErrorCode::BadInputFile,
                "expected object with num_vertices and edges");
  }
  if (!j["num_vertices"].is_number_integer()) {
    throw Error(ErrorCode::BadInputFile, "num_vertices must be an integer");
  }
  int n = j["num_vertices"].get<int>();
  if (n <= 0) {
    throw Error(ErrorCode::BadInputFile, "num_vertices must be positive");
  }
  if (!j["edges"].is_array()) {
    throw Error(ErrorCode::BadInputFile, "edges must be an array");
  }
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  std::size_t idx = 0;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 3 ||
        !item[0].is_number_integer() || !item[1].is_number_integer() ||
        !item[2].is_number()) {
      throw Error(ErrorCode::BadInputFile,
                  "edges[" + std::to_string(idx) + "] must be [u, v, w]");
    }
    int u = item[0].get<int>();
    int v = item[1].get<int>();
    double w = item[2].get<double>();
    if (u > v) {
      throw Error(ErrorCode::BadInputFile,
                  "edges[" + std::to_string(idx) + "]: requires u <= v");
    }
    if (u < 0 || v >= n) {
      throw Error(ErrorCode::BadInputFile,
                  "edges[" + std::to_string(idx) + "]: vertex out of range");
    }
    edges.push_back({u, v, w});
    ++idx;
  }
  return WeightedGraph::build(n, edges);
}

nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["num_vertices"] = g.num_vertices();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back(nlohmann::json::array({e.u, e.v, e.w}));
  }
  j["edges"] = std::move(edges);
  return j;
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::BadInputFile, "cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInputFile, path + ": " + e.what());
  }
  return graph_from_json(j);
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::BadInputFile, "cannot write " + path);
  }
  out << graph_to_json(g).dump(2) << "\n";
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace specmix
