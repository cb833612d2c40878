#ifndef SPECMIX_SPECTRAL_HPP
#define SPECMIX_SPECTRAL_HPP

#include <cstdint>

#include "specmix/graph.hpp"

namespace specmix {

/// Smallest Dirichlet eigenvalue on A: smallest eigenvalue of the principal
/// submatrix of the symmetrized Laplacian.
double lambda0(const WeightedGraph& g, const VertexSet& a);

enum class FkMethod { ExactEigen, NumericMin, Bound };

struct FaberKrahnValue {
  VertexSet set;
  double lambda0;
  double lambda;
  VertexFunction minimizer;  // full-length, nonnegative, supported in set
  FkMethod method;
};

/// Faber-Krahn quantity lambda(A): infimum of <Delta f, f> / (|f|_2^2 -
/// |f|_1^2) over nonnegative f supported in A. Projected-gradient descent
/// over the nonnegative cone with seeded restarts plus the ground-state warm
/// start; the returned value is the achieved quotient of the returned
/// minimizer and lies in the sandwich
///   lambda0(A) <= lambda(A) <= lambda0(A)/(1 - pi(A)).
FaberKrahnValue lambda_fk(const WeightedGraph& g, const VertexSet& a,
                          int restarts = 16, std::uint64_t seed = 0);

/// Second-smallest eigenvalue of the Laplacian.
double spectral_gap(const WeightedGraph& g);

/// Phi(S) = w(boundary of S)/w(S); upper bound on lambda0(S).
double conductance(const WeightedGraph& g, const VertexSet& s);

struct LogSobolevValue {
  double alpha;
  VertexFunction minimizer;
  int restarts_used;
  double residual;  // scaled stationarity residual at the minimizer
};

/// Numerical upper bound on the log-Sobolev constant
/// alpha = inf <Delta f,f> / Ent_pi(f^2), certified by its minimizer.
LogSobolevValue log_sobolev(const WeightedGraph& g, int restarts = 12,
                            double tolerance = 1e-7);

/// Quotient <Delta f,f> / (|f|_2^2 - |f|_1^2) for nonnegative f;
/// exposed for oracles and reports.
double faber_krahn_quotient(const WeightedGraph& g, const VertexFunction& f);

/// Quotient <Delta f,f> / Ent_pi(f^2) for positive f.
double log_sobolev_quotient(const WeightedGraph& g, const VertexFunction& f);

}  // namespace specmix

#endif
