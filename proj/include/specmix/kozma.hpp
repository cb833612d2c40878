#ifndef SPECMIX_KOZMA_HPP
#define SPECMIX_KOZMA_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "specmix/graph.hpp"

namespace specmix {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Extended-precision float: 58 decimal digits (~192 bits) of significand
/// and the MPFR exponent range, far beyond the 2^(2^k) cardinalities that
/// overflow doubles once k >= 10.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<58>>;

/// (significand in [0.5, 1), base-2 exponent) plus a decimal rendering; the
/// report serialization of a BigFloat.
struct BigValueRepr {
  double significand;
  long exponent2;
  std::string decimal;
};
BigValueRepr big_value_repr(const BigFloat& x);

/// Piece bookkeeping for the construction G_k: pieces H_l = A_l x B_l for
/// l = ceil(log2 k) .. k, each of size 2^(2^k).
struct ConstructionParams {
  int k;
  int min_piece;    // ceil(log2 k)
  int piece_count;  // m = k - min_piece + 1
  BigInt piece_size;
  BigInt total_size;  // n_k = m * 2^(2^k)

  BigInt a_size(int l) const;  // |A_l| = 2^(2^k - 2^l)
  BigInt b_size(int l) const;  // |B_l| = 2^(2^l)
  bool valid_piece(int l) const { return l >= min_piece && l <= k; }
};

ConstructionParams construction_sizes(int k);

/// Dense realization; only k = 3 (512 vertices) is materialized.
WeightedGraph build_gk_dense(int k);

struct ThreeCoinProbs {
  Rational p1;  // uniform-over-G event
  Rational p2;  // uniform-over-piece event
  Rational p3;  // uniform-over-copy event
};

ThreeCoinProbs three_coin_probs(int k, int l);

/// Vertex of G_k addressed by piece and coordinates in A_l x B_l.
struct GkVertex {
  int l;
  BigInt a;
  BigInt b;
};

/// Flat index in the dense layout (pieces in ascending l, row-major a,b).
BigInt gk_vertex_index(const ConstructionParams& params, const GkVertex& v);

/// Exact one-step probability of the three-coin walk from s to t.
Rational three_coin_step_probability(int k, const GkVertex& s,
                                     const GkVertex& t);

/// Lumped classes for a walk started in piece l: the start vertex, the rest
/// of its A-copy (omitted when |A_l| = 1), the rest of the piece, and one
/// class per other piece.
struct LumpedChain {
  int k;
  int l;
  ConstructionParams params;
  std::vector<std::string> class_names;
  std::vector<BigInt> class_sizes;
  std::vector<std::vector<Rational>> step;  // one-step class matrix, rows sum to 1

  int class_count() const { return static_cast<int>(class_sizes.size()); }
  /// Stationary mass of a class: |C| / n_k.
  Rational stationary(int c) const {
    return Rational(class_sizes[c], params.total_size);
  }
};

LumpedChain lumped_chain(int k, int l);

/// Exact one-step distribution over the lumped classes from the start
/// vertex, plus (for k = 3) the vertex-level law via
/// three_coin_step_probability.
struct OneStepLaw {
  LumpedChain chain;  // row 0 of chain.step is the class distribution
  std::vector<Rational> class_mass;
};
OneStepLaw one_step_law(int k, int l);

struct WalkTrace {
  long steps = 0;
  long tau1 = -1;  // -1: event never fired
  long tau2 = -1;
  long tau3 = -1;
  int final_class = 0;
};

struct WalkStatistics {
  int k = 0;
  int l_start = 0;
  long steps = 0;
  std::uint64_t seed = 0;
  int replicas = 0;
  bool poissonized = false;
  double time = 0.0;  // Poisson intensity in poissonized mode

  double empirical_tau1_gt = 0.0, se_tau1 = 0.0, exact_tau1 = 0.0;
  double empirical_tau12_gt = 0.0, se_tau12 = 0.0, exact_tau12 = 0.0;
  double empirical_tau123_gt = 0.0, se_tau123 = 0.0, exact_tau123 = 0.0;

  std::vector<std::string> class_names;
  std::vector<long> final_class_counts;
};

WalkStatistics simulate_walk(int k, int l_start, long steps,
                             std::uint64_t seed, int replicas,
                             bool poissonized = false, double time = 0.0);

/// L-infinity deviation of the continuous-time walk on G_k at time t when
/// started in piece l, from the lumped chain in extended precision.
BigFloat lumped_deviation(const LumpedChain& chain, double t);

/// Aggregates lumped heat-kernel row (start class -> class masses) at time t.
std::vector<BigFloat> lumped_heat_row(const LumpedChain& chain, double t);

struct ConstructionTau {
  double tau = 0.0;
  std::vector<std::pair<int, double>> per_piece;  // (l, tau_l)
};

/// Exact tau_infinity(epsilon) of G_k: max over start pieces of the lumped
/// deviation crossing time. 3 <= k <= 16.
ConstructionTau tau_construction(int k, double epsilon = 0.5);

struct RhoLowerBoundBand {
  int l;
  BigFloat lambda_ub;     // Phi(A~_l) / (1 - pi(A~_l))
  BigFloat r_from, r_to;  // clamped dyadic band
  BigFloat contribution;  // 2 * log(r_to/r_from) / lambda_ub
};

struct RhoLowerBound {
  BigFloat value;
  std::vector<RhoLowerBoundBand> bands;
  double ratio_to_k2k;  // value / (k 2^k)
};

/// Certified lower bound on rho(G_k) from the conductance bound on the
/// copies A~_l, summed over disjoint dyadic bands of the profile integral.
RhoLowerBound rho_lower_bound(int k);

}  // namespace specmix

#endif
