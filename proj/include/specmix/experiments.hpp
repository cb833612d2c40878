#ifndef SPECMIX_EXPERIMENTS_HPP
#define SPECMIX_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "specmix/graph.hpp"

namespace specmix {

struct SuiteGraph {
  std::string name;
  WeightedGraph graph;
};

/// The default verification suite: K_n (n = 2..8), paths and cycles
/// (n = 3..12), the 8-vertex star, and 20 seeded random connected weighted
/// graphs (n <= 12, weights uniform in [0.5, 2]).
struct SuiteSpec {
  std::uint64_t seed = 0;
  std::vector<SuiteGraph> graphs;

  static SuiteSpec default_suite(std::uint64_t seed = 0);
};

WeightedGraph complete_graph(int n);
WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);
WeightedGraph star_graph(int n);
WeightedGraph random_connected_graph(int index, std::uint64_t seed);

/// Tabular report: one row per graph (or per parameter), named columns,
/// plus named pass/fail flags recomputable from the rows.
struct TheoremReport {
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, bool>> flags;

  bool passed() const {
    for (const auto& [name, ok] : flags) {
      if (!ok) return false;
    }
    return true;
  }
  double column_max(const std::string& name) const;
  double column_min(const std::string& name) const;
};

/// Per-graph check of the constant-free bound tau_inf(1/2) <= rho.
TheoremReport verify_gmt(const SuiteSpec& suite);

/// Per-graph ratio rho / (tau * max(1, log2 log2 1/pi_*)).
TheoremReport thm1_report(const SuiteSpec& suite);

/// Construction table over k = 3..k_max: tau, rho lower bound, ratio,
/// ratio/k, with the trend assertions.
TheoremReport thm2_report(int k_max);

/// Deviation threshold for the binary-tree demo. The default mixing
/// threshold 1/2 is exactly the limit amplitude of the slow mode seen from
/// the root's child, so the linear-vs-exponential contrast is asserted at a
/// threshold strictly below it.
inline constexpr double kTreeDemoEpsilon = 0.25;

/// Binary-tree per-start mixing times for h = 4..h_max.
TheoremReport tree_demo(int h_max);

}  // namespace specmix

#endif
