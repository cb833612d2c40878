#include "specmix/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specmix/calibration.hpp"
#include "specmix/kozma.hpp"
#include "specmix/mixing.hpp"
#include "specmix/profile.hpp"
#include "specmix/rng.hpp"
#include "specmix/rough_isometry.hpp"

namespace specmix {

WeightedGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph star_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph random_connected_graph(int index, std::uint64_t seed) {
  CounterStream rng(mix64(seed, 0x5017eull, static_cast<std::uint64_t>(index)));
  int n = 4 + static_cast<int>(rng.next_below(9));  // 4..12
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {  // random spanning tree keeps it connected
    int parent = static_cast<int>(rng.next_below(v));
    edges.push_back({parent, v, rng.next_uniform(0.5, 2.0)});
  }
  std::vector<std::pair<int, int>> tree_pairs;
  for (const Edge& e : edges) tree_pairs.push_back({e.u, e.v});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      bool in_tree = false;
      for (auto [a, b] : tree_pairs) {
        if (a == std::min(u, v) && b == std::max(u, v)) in_tree = true;
        if (b == std::min(u, v) && a == std::max(u, v)) in_tree = true;
      }
      if (in_tree) continue;
      if (rng.next_unit() < 0.35) {
        edges.push_back({u, v, rng.next_uniform(0.5, 2.0)});
      }
    }
  }
  return WeightedGraph::build(n, edges);
}

SuiteSpec SuiteSpec::default_suite(std::uint64_t seed) {
  SuiteSpec suite;
  suite.seed = seed;
  for (int n = 2; n <= 8; ++n) {
    suite.graphs.push_back({"K" + std::to_string(n), complete_graph(n)});
  }
  for (int n = 3; n <= 12; ++n) {
    suite.graphs.push_back({"path" + std::to_string(n), path_graph(n)});
  }
  for (int n = 3; n <= 12; ++n) {
    suite.graphs.push_back({"cycle" + std::to_string(n), cycle_graph(n)});
  }
  suite.graphs.push_back({"star8", star_graph(8)});
  for (int i = 0; i < 20; ++i) {
    WeightedGraph g = random_connected_graph(i, seed);
    suite.graphs.push_back(
        {"rand" + std::to_string(i) + "_n" + std::to_string(g.num_vertices()),
         std::move(g)});
  }
  return suite;
}

double TheoremReport::column_max(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t c = it - columns.begin();
  for (const auto& row : rows) best = std::max(best, row[c]);
  return best;
}

double TheoremReport::column_min(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  double best = std::numeric_limits<double>::infinity();
  std::size_t c = it - columns.begin();
  for (const auto& row : rows) best = std::min(best, row[c]);
  return best;
}

TheoremReport verify_gmt(const SuiteSpec& suite) {
  TheoremReport report;
  report.columns = {"n", "tau", "rho", "pi_star", "slack"};
  bool all_hold = true;
  for (const SuiteGraph& sg : suite.graphs) {
    MixingReport mix = tau_inf(sg.graph, 0.5);
    RhoResult r = rho(sg.graph, 0.5);
    double slack = r.rho / std::max(mix.tau_inf, 1e-300);
    report.row_labels.push_back(sg.name);
    report.rows.push_back({static_cast<double>(sg.graph.num_vertices()),
                           mix.tau_inf, r.rho, sg.graph.min_stationary(),
                           slack});
    if (!(mix.tau_inf <= r.rho + 1e-9)) all_hold = false;
  }
  report.flags.push_back({"tau_le_rho", all_hold});
  return report;
}

TheoremReport thm1_report(const SuiteSpec& suite) {
  TheoremReport report;
  report.columns = {"n", "tau", "rho", "pi_star", "loglog", "ratio"};
  bool finite_positive = true;
  double max_ratio = 0.0;
  for (const SuiteGraph& sg : suite.graphs) {
    MixingReport mix = tau_inf(sg.graph, 0.5);
    RhoResult r = rho(sg.graph, 0.5);
    double pi_star = sg.graph.min_stationary();
    double loglog = std::max(1.0, std::log2(std::log2(1.0 / pi_star)));
    double ratio = r.rho / (mix.tau_inf * loglog);
    if (!std::isfinite(ratio) || !(ratio > 0.0)) finite_positive = false;
    max_ratio = std::max(max_ratio, ratio);
    report.row_labels.push_back(sg.name);
    report.rows.push_back({static_cast<double>(sg.graph.num_vertices()),
                           mix.tau_inf, r.rho, pi_star, loglog, ratio});
  }
  report.flags.push_back({"ratios_finite_positive", finite_positive});
  report.flags.push_back(
      {"max_ratio_le_threshold", max_ratio <= calibration::kThm1RatioMax});
  return report;
}

TheoremReport thm2_report(int k_max) {
  if (k_max < 3 || k_max > 12) {
    throw Error(ErrorCode::KOutOfRange, "thm2_report needs 3 <= k_max <= 12");
  }
  TheoremReport report;
  report.columns = {"tau", "rho_lb", "ratio", "ratio_per_k", "loglog_n"};
  bool tau_bounded = true;
  bool increasing = true;
  double prev_ratio = 0.0;
  double base_ratio_per_k = 0.0;
  bool per_k_ok = true;
  for (int k = 3; k <= k_max; ++k) {
    ConstructionTau tau = tau_construction(k, 0.5);
    RhoLowerBound lb = rho_lower_bound(k);
    double rho_lb = static_cast<double>(lb.value);
    double ratio = rho_lb / tau.tau;
    double per_k = ratio / k;
    ConstructionParams params = construction_sizes(k);
    double log2n = static_cast<double>(log(BigFloat(params.total_size)) /
                                       log(BigFloat(2)));
    double loglog_n = std::log2(log2n);
    report.row_labels.push_back("k" + std::to_string(k));
    report.rows.push_back({tau.tau, rho_lb, ratio, per_k, loglog_n});
    if (!(tau.tau <= calibration::kTauConstructionFactor * std::ldexp(1.0, k))) {
      tau_bounded = false;
    }
    if (k > 3 && !(ratio > prev_ratio)) increasing = false;
    prev_ratio = ratio;
    if (k == 3) base_ratio_per_k = per_k;
    if (per_k < calibration::kThm2RatioPerKFraction * base_ratio_per_k) {
      per_k_ok = false;
    }
  }
  report.flags.push_back({"tau_le_2^(k+2)", tau_bounded});
  report.flags.push_back({"ratio_strictly_increasing", increasing});
  report.flags.push_back({"ratio_per_k_ge_half_base", per_k_ok});
  return report;
}

TheoremReport tree_demo(int h_max) {
  if (h_max < 4 || h_max > 10) {
    throw Error(ErrorCode::BadInputFile, "tree_demo needs 4 <= h_max <= 10");
  }
  TheoremReport report;
  report.columns = {"tau_root", "tau_child", "child_over_root",
                    "root_growth", "child_growth"};
  bool child_above_root = true;
  bool growth_ok = true;
  double prev_root = 0.0, prev_child = 0.0;
  for (int h = 4; h <= h_max; ++h) {
    WeightedGraph tree = binary_tree(h);
    SpectralDecomposition sd = SpectralDecomposition::compute(tree);
    // Per-start times at eps = 1/4. At eps = 1/2 the child start is
    // degenerate: the slow-mode amplitude seen from the root's child tends
    // to exactly 1/2 (harmonic profile 1 - 2^-d), so the exponential scale
    // only shows up for thresholds strictly below 1/2.
    double tau_root = tau_inf_from(sd, 0, kTreeDemoEpsilon);
    double tau_child = tau_inf_from(sd, 1, kTreeDemoEpsilon);
    double root_growth = h > 4 ? tau_root / prev_root : 0.0;
    double child_growth = h > 4 ? tau_child / prev_child : 0.0;
    report.row_labels.push_back("h" + std::to_string(h));
    report.rows.push_back({tau_root, tau_child, tau_child / tau_root,
                           root_growth, child_growth});
    if (!(tau_child > tau_root)) child_above_root = false;
    if (h >= 6) {
      if (!(child_growth >= calibration::kTreeChildRatioMin)) growth_ok = false;
      if (!(root_growth <= calibration::kTreeRootRatioMax)) growth_ok = false;
    }
    prev_root = tau_root;
    prev_child = tau_child;
  }
  report.flags.push_back({"child_slower_than_root", child_above_root});
  report.flags.push_back({"exponential_vs_linear_growth", growth_ok});
  return report;
}

}  // namespace specmix
