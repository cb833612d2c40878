#include "specmix/mixing.hpp"

#include <algorithm>
#include <cmath>

namespace specmix {

SpectralDecomposition SpectralDecomposition::compute(const WeightedGraph& g) {
  if (!g.connected()) {
    throw Error(ErrorCode::Disconnected, "spectral decomposition");
  }
  SpectralDecomposition sd;
  sd.pi = g.stationary();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.symmetrized_laplacian());
  sd.eigenvalues = es.eigenvalues();
  const int n = g.num_vertices();
  sd.psi.resize(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd phi = es.eigenvectors().col(i);
    for (int x = 0; x < n; ++x) sd.psi(x, i) = phi[x] / std::sqrt(sd.pi[x]);
  }
  // Constant eigenfunction first, with positive sign.
  if (sd.psi(0, 0) < 0) sd.psi.col(0) *= -1.0;
  return sd;
}

Eigen::MatrixXd SpectralDecomposition::heat_kernel(double t) const {
  if (t < 0) throw Error(ErrorCode::NegativeTime, "heat_kernel");
  const int n = size();
  Eigen::VectorXd decay(n);
  for (int i = 0; i < n; ++i) decay[i] = std::exp(-eigenvalues[i] * t);
  Eigen::MatrixXd h = psi * decay.asDiagonal() * psi.transpose();
  for (int y = 0; y < n; ++y) h.col(y) *= pi[y];
  return h;
}

double SpectralDecomposition::deviation_diagonal(double t) const {
  const int n = size();
  double best = 0.0;
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int i = 1; i < n; ++i) {
      s += std::exp(-eigenvalues[i] * t) * psi(x, i) * psi(x, i);
    }
    best = std::max(best, s);
  }
  return best;
}

double SpectralDecomposition::deviation_from(int x, double t) const {
  const int n = size();
  double best = 0.0;
  for (int y = 0; y < n; ++y) {
    double s = 0.0;
    for (int i = 1; i < n; ++i) {
      s += std::exp(-eigenvalues[i] * t) * psi(x, i) * psi(y, i);
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

Eigen::MatrixXd heat_kernel(const WeightedGraph& g, double t) {
  return SpectralDecomposition::compute(g).heat_kernel(t);
}

double linf_deviation(const WeightedGraph& g, double t) {
  if (t < 0) throw Error(ErrorCode::NegativeTime, "linf_deviation");
  SpectralDecomposition sd = SpectralDecomposition::compute(g);
  double diag = sd.deviation_diagonal(t);
  double full = 0.0;
  for (int x = 0; x < sd.size(); ++x) {
    full = std::max(full, sd.deviation_from(x, t));
  }
  if (full > diag + 1e-9) {
    throw std::logic_error("off-diagonal deviation exceeded diagonal max");
  }
  return diag;
}

namespace {

std::vector<DeviationSample> sample_curve(const SpectralDecomposition& sd,
                                          double t_max) {
  std::vector<DeviationSample> samples;
  samples.push_back({0.0, sd.deviation_diagonal(0.0)});
  double lo = t_max > 0 ? t_max * 1e-3 : 1e-3;
  double hi = t_max > 0 ? t_max * 4.0 : 4.0;
  const int kSamples = 49;
  for (int i = 0; i < kSamples; ++i) {
    double t = lo * std::pow(hi / lo, static_cast<double>(i) / (kSamples - 1));
    samples.push_back({t, sd.deviation_diagonal(t)});
  }
  return samples;
}

}  // namespace

MixingReport tau_inf(const SpectralDecomposition& sd, double epsilon) {
  MixingReport report;
  report.epsilon = epsilon;

  if (sd.deviation_diagonal(0.0) <= epsilon) {
    report.tau_inf = 0.0;
    report.samples = sample_curve(sd, 1.0 / sd.gap());
    return report;
  }

  double hi = 1.0 / sd.gap();
  while (sd.deviation_diagonal(hi) > epsilon) hi *= 2.0;
  double lo = 0.0;
  while (hi - lo > 1e-12 * hi) {
    double mid = 0.5 * (lo + hi);
    if (sd.deviation_diagonal(mid) > epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  report.tau_inf = hi;  // d(hi) <= epsilon <= d(lo), bracket below 1e-9 rel
  report.samples = sample_curve(sd, hi);
  return report;
}

MixingReport tau_inf(const WeightedGraph& g, double epsilon) {
  return tau_inf(SpectralDecomposition::compute(g), epsilon);
}

double tau_inf_from(const SpectralDecomposition& sd, int start,
                    double epsilon) {
  // Pointwise deviation need not be monotone off the diagonal: scan a
  // geometric grid, locate the last crossing, and bisect inside it.
  double global_hi = 1.0 / sd.gap();
  while (sd.deviation_diagonal(global_hi) > epsilon) global_hi *= 2.0;
  // deviation_from <= global deviation, so the start is mixed by global_hi.

  std::vector<double> grid{0.0};
  const double t0 = global_hi * 1e-6;
  const double q = std::pow(2.0, 1.0 / 16.0);
  for (double t = t0; t < global_hi * 1.0001; t *= q) grid.push_back(t);
  grid.push_back(global_hi * 1.0001);

  int last_above = -1;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    if (sd.deviation_from(start, grid[i]) > epsilon) last_above = i;
  }
  if (last_above < 0) return 0.0;
  while (last_above + 1 >= static_cast<int>(grid.size())) {
    grid.push_back(grid.back() * 2.0);  // unreachable in theory; keep safe
  }

  double lo = grid[last_above];
  double hi = grid[last_above + 1];
  while (hi - lo > 1e-12 * hi) {
    double mid = 0.5 * (lo + hi);
    if (sd.deviation_from(start, mid) > epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double tau_inf_from(const WeightedGraph& g, int start, double epsilon) {
  return tau_inf_from(SpectralDecomposition::compute(g), start, epsilon);
}

}  // namespace specmix
