#ifndef SPECMIX_CALIBRATION_HPP
#define SPECMIX_CALIBRATION_HPP

// Frozen verification thresholds. Each constant was fixed from the oracle
// run recorded next to it (eigendecomposition or closed-form evaluation on
// the stated inputs) and is not tuned afterwards.

namespace specmix::calibration {

// Ratio rho / (tau * max(1, log2 log2 (1/pi_*))) over the default suite.
// Oracle run (seed 0, full default suite): max ratio 4.0 at K_2.
inline constexpr double kThm1RatioMax = 40.0;

// rho / dyadic_sum over the default suite.
// Oracle run (seed 0): range [1.90, 4.41]; K_2 gives 2.77.
inline constexpr double kRhoDyadicRatioLo = 1.0;
inline constexpr double kRhoDyadicRatioHi = 10.0;

// Construction: tau(k) <= 2^{k+2} for k = 3..12; the asymptotic bound is
// 2^{k+1} but the small-k correction terms are not negligible.
inline constexpr double kTauConstructionFactor = 4.0;  // times 2^k

// thm2 trend: ratio(k)/k must stay above this fraction of its k = 3 value.
inline constexpr double kThm2RatioPerKFraction = 0.5;

// Binary-tree per-start mixing times at threshold 1/4, eigendecomposition
// oracle h = 4..9 (tau from the root grows ~linearly, from a root neighbor
// it roughly doubles per level):
//   h:            4        5        6        7        8        9
//   tau_root:    10.753   16.864   24.147   32.375   41.331   50.834
//   tau_child:   47.047   94.954  187.64   369.35   728.71  1443.1
//   root ratio:           1.5683   1.4319   1.3407   1.2766   1.2299
//   child ratio:          2.0183   1.9761   1.9684   1.9730   1.9804
inline constexpr double kTreeChildRatioMin = 1.9;  // per level, h >= 6
inline constexpr double kTreeRootRatioMax = 1.5;   // per level, h >= 6

}  // namespace specmix::calibration

#endif
