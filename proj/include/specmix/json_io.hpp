#ifndef SPECMIX_JSON_IO_HPP
#define SPECMIX_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "specmix/graph.hpp"

namespace specmix {

/// Graph file format: {"num_vertices": n, "edges": [[u, v, w], ...]} with
/// u <= v, each unordered pair at most once, w > 0; u == v is a self-loop.
WeightedGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const WeightedGraph& g);

WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

/// Formats with 12 significant digits (the report-wide convention).
std::string format_number(double x);

/// Rounds through the 12-significant-digit representation so JSON reports
/// serialize identically to their CSV counterparts.
double round12(double x);

}  // namespace specmix

#endif
