#ifndef SPECMIX_MIXING_HPP
#define SPECMIX_MIXING_HPP

#include <optional>
#include <vector>

#include "specmix/graph.hpp"

namespace specmix {

/// Eigensystem of the Laplacian with L^2(pi)-orthonormal eigenfunctions,
/// eigenvalues ascending from 0. Immutable; safe to share across threads.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // of Delta, ascending, in [0, 2]
  Eigen::MatrixXd psi;          // column i is eigenfunction psi_i
  Eigen::VectorXd pi;

  static SpectralDecomposition compute(const WeightedGraph& g);

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double gap() const { return eigenvalues[1]; }

  /// H_t(x,y) = sum_i e^{-lambda_i t} psi_i(x) psi_i(y) pi(y).
  Eigen::MatrixXd heat_kernel(double t) const;

  /// max_x sum_{i>=2} e^{-lambda_i t} psi_i(x)^2; equals the L-infinity
  /// deviation for reversible chains (diagonal dominance).
  double deviation_diagonal(double t) const;

  /// max_y |H_t(x,y) - pi(y)| / pi(y) for a fixed start.
  double deviation_from(int x, double t) const;
};

Eigen::MatrixXd heat_kernel(const WeightedGraph& g, double t);

/// d(t) = sup_{x,y} |H_t(x,y) - pi(y)|/pi(y). Computes the diagonal maximum
/// and cross-checks the full off-diagonal supremum against it.
double linf_deviation(const WeightedGraph& g, double t);

struct DeviationSample {
  double t;
  double d;
};

struct MixingReport {
  double epsilon = 0.5;
  double tau_inf = 0.0;
  std::vector<DeviationSample> samples;
  std::vector<std::pair<int, double>> per_start;  // filled on request
  std::optional<double> rho;                      // filled by verification
};

MixingReport tau_inf(const WeightedGraph& g, double epsilon = 0.5);
MixingReport tau_inf(const SpectralDecomposition& sd, double epsilon = 0.5);

double tau_inf_from(const WeightedGraph& g, int start, double epsilon = 0.5);
double tau_inf_from(const SpectralDecomposition& sd, int start,
                    double epsilon = 0.5);

}  // namespace specmix

#endif
