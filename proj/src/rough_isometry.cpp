#include "specmix/rough_isometry.hpp"

#include <deque>
#include <limits>

namespace specmix {

PathMetric path_metric(const WeightedGraph& g) {
  const int n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  PathMetric m;
  m.n = n;
  m.dist = Eigen::MatrixXd::Constant(n, n, inf);
  for (int s = 0; s < n; ++s) {
    m.dist(s, s) = 0.0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto& [y, w] : g.neighbors(x)) {
        (void)w;
        if (y == x) continue;
        if (m.dist(s, y) == inf) {
          m.dist(s, y) = m.dist(s, x) + 1.0;
          queue.push_back(y);
        }
      }
    }
  }
  return m;
}

RoughIsometryReport check_rough_isometry(const PathMetric& x,
                                         const PathMetric& y,
                                         const std::vector<int>& map,
                                         double k) {
  if (static_cast<int>(map.size()) != x.n) {
    throw Error(ErrorCode::PartialMap,
                "map has " + std::to_string(map.size()) + " entries for " +
                    std::to_string(x.n) + " vertices");
  }
  for (int v : map) {
    if (v < 0 || v >= y.n) {
      throw Error(ErrorCode::PartialMap,
                  "target index " + std::to_string(v) + " out of range");
    }
  }

  RoughIsometryReport report;
  report.k = k;

  for (int a = 0; a < x.n; ++a) {
    for (int b = a + 1; b < x.n; ++b) {
      double dx = x(a, b);
      double dy = y(map[a], map[b]);
      if (dy < dx / k - k) {
        report.holds = false;
        report.violation = RoughIsometryReport::Violation::PairLower;
        report.witness_a = a;
        report.witness_b = b;
        return report;
      }
      if (dy > k * dx + k) {
        report.holds = false;
        report.violation = RoughIsometryReport::Violation::PairUpper;
        report.witness_a = a;
        report.witness_b = b;
        return report;
      }
    }
  }

  for (int t = 0; t < y.n; ++t) {
    bool covered = false;
    for (int a = 0; a < x.n && !covered; ++a) {
      covered = y(map[a], t) <= k;
    }
    if (!covered) {
      report.holds = false;
      report.violation = RoughIsometryReport::Violation::Uncovered;
      report.uncovered = t;
      return report;
    }
  }

  report.holds = true;
  report.violation = RoughIsometryReport::Violation::None;
  return report;
}

WeightedGraph binary_tree(int h) {
  if (h < 1) throw Error(ErrorCode::BadInputFile, "tree height must be >= 1");
  int n = (1 << (h + 1)) - 1;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; 2 * i + 2 < n; ++i) {
    edges.push_back({i, 2 * i + 1, 1.0});
    edges.push_back({i, 2 * i + 2, 1.0});
  }
  return WeightedGraph::build(n, edges);
}

}  // namespace specmix
