#ifndef SPECMIX_TEST_ORACLES_HPP
#define SPECMIX_TEST_ORACLES_HPP

// Independent computational routes used to freeze expected values. These
// deliberately avoid the library's minimization and spectral code paths.

#include <Eigen/Dense>

#include "specmix/graph.hpp"
#include "specmix/profile.hpp"

namespace specmix::oracles {

/// Faber-Krahn quotient evaluated from first principles (pairwise Dirichlet
/// sum over edges, pi-weighted norms).
double quotient(const WeightedGraph& g, const Eigen::VectorXd& f);

/// lambda(A) by exhaustive support enumeration: on each support the interior
/// stationarity condition is a generalized symmetric eigenproblem, and the
/// cone minimum is attained at a nonnegative eigenvector of one of them.
double lambda_enumerate(const WeightedGraph& g, const VertexSet& a);

/// Heat kernel by the uniformized power series e^-t sum t^j/j! K^j.
Eigen::MatrixXd heat_kernel_series(const WeightedGraph& g, double t);

/// sup_{x,y} |H_t(x,y) - pi(y)|/pi(y) from the series heat kernel.
double deviation_series(const WeightedGraph& g, double t);

/// tau_inf by bisection on the series deviation.
double tau_bisect_series(const WeightedGraph& g, double epsilon);

/// rho by log-space Riemann quadrature of 2/(r Lambda(r)) on a fine grid.
double rho_quadrature(const SpectralProfileCurve& curve, double epsilon,
                      int panels = 200000);

/// Log-Sobolev quotient minimum of K_2 over the ray f = (a, 1) on a grid.
double log_sobolev_grid_k2(const WeightedGraph& k2);

}  // namespace specmix::oracles

#endif
