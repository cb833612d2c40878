#ifndef SPECMIX_ROUGH_ISOMETRY_HPP
#define SPECMIX_ROUGH_ISOMETRY_HPP

#include <vector>

#include "specmix/graph.hpp"

namespace specmix {

/// All-pairs shortest-path distances over edges with positive weight;
/// self-loops are ignored and disconnected pairs carry +infinity.
struct PathMetric {
  int n = 0;
  Eigen::MatrixXd dist;

  double operator()(int a, int b) const { return dist(a, b); }
};

PathMetric path_metric(const WeightedGraph& g);

struct RoughIsometryReport {
  enum class Violation { None, PairLower, PairUpper, Uncovered };

  double k = 0.0;
  bool holds = false;
  Violation violation = Violation::None;
  int witness_a = -1;  // violating pair for the distortion conditions
  int witness_b = -1;
  int uncovered = -1;  // target with no preimage within distance k
};

/// Exhaustive check of the two K-rough-isometry conditions for a given map;
/// the witness is the lexicographically smallest violator.
RoughIsometryReport check_rough_isometry(const PathMetric& x,
                                         const PathMetric& y,
                                         const std::vector<int>& map,
                                         double k);

/// Complete binary tree of height h with unit edge weights
/// (2^{h+1} - 1 vertices, root at index 0, children of i at 2i+1, 2i+2).
WeightedGraph binary_tree(int h);

}  // namespace specmix

#endif
