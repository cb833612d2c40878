#ifndef SPECMIX_PROFILE_HPP
#define SPECMIX_PROFILE_HPP

#include <vector>

#include "specmix/graph.hpp"
#include "specmix/spectral.hpp"

namespace specmix {

/// Piecewise-constant spectral profile; value_at(r) is the infimum of
/// lambda(A) over pi(A) <= r, extended by the spectral gap for r >= 1.
struct SpectralProfileCurve {
  std::vector<double> breakpoints;  // increasing achievable measures
  std::vector<double> values;       // Lambda on [r_i, r_{i+1})
  double pi_star = 0.0;
  double gap = 0.0;

  double value_at(double r) const;
};

struct ProfileBand {
  double r_from;
  double r_to;
  double lambda;
};

std::vector<ProfileBand> curve_bands(const SpectralProfileCurve& curve);

struct RayleighSet {
  int k;          // dyadic level: pi(set) <= 2^-k
  VertexSet set;  // lexicographically smallest minimizer
  double lambda;
};

struct RayleighSets {
  std::vector<RayleighSet> sets;  // k = 1 .. floor(log2 1/pi_star)
};

struct RhoBand {
  double r_from;
  double r_to;
  double lambda;
  double contribution;
};

struct RhoResult {
  double rho = 0.0;
  double epsilon = 0.5;
  std::vector<RhoBand> bands;
  double dyadic_sum = 0.0;  // sum over k of 1/lambda(A_k)
};

inline constexpr int kExactEnumerationLimit = 20;

SpectralProfileCurve spectral_profile(const WeightedGraph& g);
RayleighSets rayleigh_sets(const WeightedGraph& g);
RhoResult rho(const WeightedGraph& g, double epsilon = 0.5);

/// One enumeration shared by curve, Rayleigh sets and rho.
struct ProfileComputation {
  SpectralProfileCurve curve;
  RayleighSets rayleigh;
};
ProfileComputation compute_profile(const WeightedGraph& g);

}  // namespace specmix

#endif
