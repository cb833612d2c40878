#include "specmix/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace specmix {

double SpectralProfileCurve::value_at(double r) const {
  if (breakpoints.empty() || r < breakpoints.front()) {
    throw Error(ErrorCode::EmptySet,
                "spectral profile undefined below pi_star");
  }
  if (r >= 1.0) return gap;
  std::size_t i = 0;
  while (i + 1 < breakpoints.size() && breakpoints[i + 1] <= r) ++i;
  return values[i];
}

std::vector<ProfileBand> curve_bands(const SpectralProfileCurve& curve) {
  std::vector<ProfileBand> bands;
  for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
    double hi = i + 1 < curve.breakpoints.size()
                    ? curve.breakpoints[i + 1]
                    : std::numeric_limits<double>::infinity();
    bands.push_back({curve.breakpoints[i], hi, curve.values[i]});
  }
  return bands;
}

namespace {

struct SubsetEntry {
  std::uint32_t mask;
  double measure;
  double lambda0;
};

// Relative tolerance treating two lambda values as tied; the
// lexicographically smaller set then wins.
constexpr double kTieTol = 1e-9;

}  // namespace

ProfileComputation compute_profile(const WeightedGraph& g) {
  const int n = g.num_vertices();
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "spectral_profile");
  if (n > kExactEnumerationLimit) {
    throw Error(ErrorCode::TooLargeForExact,
                "exact enumeration limited to " +
                    std::to_string(kExactEnumerationLimit) + " vertices");
  }

  Eigen::VectorXd pi = g.stationary();
  const std::uint32_t full = (n >= 32) ? 0xffffffffu
                                       : ((1u << n) - 1u);

  std::vector<SubsetEntry> entries;
  entries.reserve(full);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double measure = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) measure += pi[i];
    }
    entries.push_back({mask, measure, 0.0});
  }
  for (SubsetEntry& e : entries) {
    e.lambda0 = lambda0(g, VertexSet::from_mask(e.mask));
  }

  // Sweep subsets by increasing measure, evaluating lambda lazily: a subset
  // whose lambda0 already exceeds the running minimum cannot lower the curve
  // (lambda >= lambda0), so its exact value is never needed.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SubsetEntry& a, const SubsetEntry& b) {
                     if (a.measure != b.measure) return a.measure < b.measure;
                     return a.lambda0 < b.lambda0;
                   });

  std::map<std::uint32_t, double> lambda_cache;
  auto lambda_of = [&](std::uint32_t mask) {
    auto it = lambda_cache.find(mask);
    if (it != lambda_cache.end()) return it->second;
    double value = lambda_fk(g, VertexSet::from_mask(mask)).lambda;
    lambda_cache.emplace(mask, value);
    return value;
  };

  SpectralProfileCurve curve;
  curve.pi_star = g.min_stationary();
  curve.gap = spectral_gap(g);

  double running = std::numeric_limits<double>::infinity();
  // Best set at the current minimum, for Rayleigh tie-breaking.
  std::uint32_t running_mask = 0;

  struct Level {  // running minimum as it stood at each achievable measure
    double measure;
    double value;
    std::uint32_t mask;
  };
  std::vector<Level> levels;

  std::size_t i = 0;
  while (i < entries.size()) {
    double measure = entries[i].measure;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].measure == measure; ++j) {
      const SubsetEntry& e = entries[j];
      if (e.lambda0 > running * (1.0 + kTieTol)) continue;
      double lam = lambda_of(e.mask);
      if (lam < running * (1.0 - kTieTol)) {
        running = lam;
        running_mask = e.mask;
      } else if (lam <= running * (1.0 + kTieTol)) {
        running = std::min(running, lam);
        VertexSet a = VertexSet::from_mask(e.mask);
        if (a.lex_less(VertexSet::from_mask(running_mask))) {
          running_mask = e.mask;
        }
      }
    }
    levels.push_back({measure, running, running_mask});
    i = j;
  }

  // Keep the first achievable measure and every measure where the running
  // minimum drops; in between the curve is constant.
  for (const Level& lv : levels) {
    if (!curve.values.empty() && lv.value == curve.values.back()) continue;
    curve.breakpoints.push_back(lv.measure);
    curve.values.push_back(lv.value);
  }

  // Rayleigh sets: sweep the same levels against the dyadic thresholds.
  RayleighSets ray;
  if (curve.pi_star < 1.0) {
    int kmax = static_cast<int>(std::floor(std::log2(1.0 / curve.pi_star)));
    for (int k = 1; k <= kmax; ++k) {
      double threshold = std::ldexp(1.0, -k);
      // Filter entries with measure <= threshold and take the lazy min.
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_mask = 0;
      for (const SubsetEntry& e : entries) {
        if (e.measure > threshold) continue;
        if (e.lambda0 > best * (1.0 + kTieTol)) continue;
        double lam = lambda_of(e.mask);
        if (lam < best * (1.0 - kTieTol)) {
          best = lam;
          best_mask = e.mask;
        } else if (lam <= best * (1.0 + kTieTol)) {
          best = std::min(best, lam);
          VertexSet a = VertexSet::from_mask(e.mask);
          if (best_mask == 0 || a.lex_less(VertexSet::from_mask(best_mask))) {
            best_mask = e.mask;
          }
        }
      }
      if (best_mask == 0) continue;  // no set small enough
      ray.sets.push_back(
          {k, VertexSet::from_mask(best_mask), lambda_of(best_mask)});
    }
  }

  return {curve, ray};
}

SpectralProfileCurve spectral_profile(const WeightedGraph& g) {
  return compute_profile(g).curve;
}

RayleighSets rayleigh_sets(const WeightedGraph& g) {
  return compute_profile(g).rayleigh;
}

RhoResult rho(const WeightedGraph& g, double epsilon) {
  if (g.num_vertices() < 2) {
    throw Error(ErrorCode::SingletonGraph, "rho");
  }
  ProfileComputation pc = compute_profile(g);
  const SpectralProfileCurve& curve = pc.curve;

  RhoResult out;
  out.epsilon = epsilon;

  const double lo = 4.0 * curve.pi_star;
  const double hi = 4.0 / epsilon;

  // Integrate 2 dr / (r Lambda(r)) over [lo, hi] in log space; the curve is
  // constant between breakpoints so every contribution is a closed-form log.
  // Cut points: the clamp endpoints, breakpoints inside, and r = 1 where the
  // gap extension takes over.
  std::vector<double> cuts{lo};
  for (double b : curve.breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  if (1.0 > lo && 1.0 < hi) cuts.push_back(1.0);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    double from = cuts[c];
    double to = cuts[c + 1];
    if (!(to > from)) continue;
    double lambda = curve.value_at(from);
    double contribution = 2.0 / lambda * std::log(to / from);
    if (out.bands.empty() || out.bands.back().lambda != lambda) {
      out.bands.push_back({from, to, lambda, contribution});
    } else {
      out.bands.back().r_to = to;
      out.bands.back().contribution += contribution;
    }
    out.rho += contribution;
  }

  for (const RayleighSet& rs : pc.rayleigh.sets) {
    out.dyadic_sum += 1.0 / rs.lambda;
  }
  return out;
}

}  // namespace specmix
