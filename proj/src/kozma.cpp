#include "specmix/kozma.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specmix/rng.hpp"

namespace specmix {

namespace {

int ceil_log2(int k) {
  int l = 0;
  while ((1 << l) < k) ++l;
  return l;
}

constexpr int kMaxConstructionK = 20;  // 2^(2^20)-sized integers stay cheap

}  // namespace

BigValueRepr big_value_repr(const BigFloat& x) {
  BigValueRepr r;
  long e = 0;
  r.significand = mpfr_get_d_2exp(&e, x.backend().data(), MPFR_RNDN);
  r.exponent2 = e;
  std::ostringstream os;
  os.precision(12);
  os << x;
  r.decimal = os.str();
  return r;
}

BigInt ConstructionParams::a_size(int l) const {
  return BigInt(1) << ((1L << k) - (1L << l));
}

BigInt ConstructionParams::b_size(int l) const {
  return BigInt(1) << (1L << l);
}

ConstructionParams construction_sizes(int k) {
  if (k < 3) throw Error(ErrorCode::KTooSmall, "construction needs k >= 3");
  if (k > kMaxConstructionK) {
    throw Error(ErrorCode::KOutOfRange,
                "k > " + std::to_string(kMaxConstructionK) +
                    " would allocate astronomically large integers");
  }
  ConstructionParams p;
  p.k = k;
  p.min_piece = ceil_log2(k);
  p.piece_count = k - p.min_piece + 1;
  p.piece_size = BigInt(1) << (1L << k);
  p.total_size = p.piece_count * p.piece_size;
  return p;
}

WeightedGraph build_gk_dense(int k) {
  if (k < 3) throw Error(ErrorCode::KTooSmall, "construction needs k >= 3");
  if (k != 3) {
    throw Error(ErrorCode::KTooLargeForDense,
                "only k = 3 (512 vertices) is materialized densely");
  }
  ConstructionParams p = construction_sizes(k);
  const int n = static_cast<int>(p.total_size);
  const int piece = static_cast<int>(p.piece_size);
  const double cross = std::ldexp(static_cast<double>(k), -k) / n;

  struct PieceInfo {
    int asz, bsz;
    double intra_diff_b, intra_same_b, self_loop;
  };
  std::vector<PieceInfo> infos;
  for (int l = p.min_piece; l <= p.k; ++l) {
    PieceInfo info;
    info.asz = static_cast<int>(p.a_size(l));
    info.bsz = static_cast<int>(p.b_size(l));
    double two_lk = std::ldexp(1.0, l - k);
    info.intra_diff_b = two_lk / piece + cross;
    info.intra_same_b = 1.0 / info.asz + info.intra_diff_b;
    info.self_loop = (1.0 - two_lk) + info.intra_same_b;
    infos.push_back(info);
  }

  auto locate = [&](int v) {  // (piece index, a, b)
    int pi = v / piece;
    int r = v % piece;
    return std::array<int, 3>{pi, r / infos[pi].bsz, r % infos[pi].bsz};
  };

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int u = 0; u < n; ++u) {
    auto [pu, au, bu] = locate(u);
    for (int v = u; v < n; ++v) {
      auto [pv, av, bv] = locate(v);
      double w;
      if (u == v) {
        w = infos[pu].self_loop;
      } else if (pu != pv) {
        w = cross;
      } else if (bu == bv) {
        w = infos[pu].intra_same_b;
      } else {
        w = infos[pu].intra_diff_b;
      }
      edges.push_back({u, v, w});
    }
  }
  WeightedGraph g = WeightedGraph::build(n, edges);

  const double expected = 2.0 + std::ldexp(static_cast<double>(k), -k);
  for (int v = 0; v < n; ++v) {
    if (std::abs(g.vertex_weight(v) - expected) > 1e-12) {
      throw std::logic_error("G_k row sum violated at vertex " +
                             std::to_string(v));
    }
  }
  return g;
}

ThreeCoinProbs three_coin_probs(int k, int l) {
  ConstructionParams p = construction_sizes(k);
  if (!p.valid_piece(l)) {
    throw Error(ErrorCode::BadPieceLabel,
                "piece " + std::to_string(l) + " outside [" +
                    std::to_string(p.min_piece) + ", " + std::to_string(k) +
                    "]");
  }
  ThreeCoinProbs c;
  // p1 = k 2^-k / (2 + k 2^-k) = k / (2^{k+1} + k)
  c.p1 = Rational(k, (BigInt(1) << (k + 1)) + k);
  // p2 = 2^{l-k-1}
  c.p2 = Rational(1, BigInt(1) << (k + 1 - l));
  // p3 = 1 / (2 - 2^{l-k}) = 2^{k-l} / (2^{k-l+1} - 1)
  c.p3 = Rational(BigInt(1) << (k - l), (BigInt(1) << (k - l + 1)) - 1);
  return c;
}

BigInt gk_vertex_index(const ConstructionParams& params, const GkVertex& v) {
  BigInt offset = BigInt(v.l - params.min_piece) * params.piece_size;
  return offset + v.a * params.b_size(v.l) + v.b;
}

Rational three_coin_step_probability(int k, const GkVertex& s,
                                     const GkVertex& t) {
  ConstructionParams p = construction_sizes(k);
  if (!p.valid_piece(s.l) || !p.valid_piece(t.l)) {
    throw Error(ErrorCode::BadPieceLabel, "three_coin_step_probability");
  }
  ThreeCoinProbs c = three_coin_probs(k, s.l);
  Rational prob = c.p1 / Rational(p.total_size);
  if (t.l == s.l) {
    Rational miss1 = 1 - c.p1;
    prob += miss1 * c.p2 / Rational(p.piece_size);
    Rational after2 = miss1 * (1 - c.p2);
    if (t.b == s.b) {
      prob += after2 * c.p3 / Rational(p.a_size(s.l));
      if (t.a == s.a) {
        prob += after2 * (1 - c.p3);
      }
    }
  }
  return prob;
}

LumpedChain lumped_chain(int k, int l) {
  ConstructionParams p = construction_sizes(k);
  if (!p.valid_piece(l)) {
    throw Error(ErrorCode::BadPieceLabel,
                "piece " + std::to_string(l) + " outside [" +
                    std::to_string(p.min_piece) + ", " + std::to_string(k) +
                    "]");
  }
  LumpedChain chain;
  chain.k = k;
  chain.l = l;
  chain.params = p;

  const BigInt asz = p.a_size(l);
  const BigInt hsz = p.piece_size;
  const bool has_c1 = asz > 1;

  chain.class_names.push_back("C0");
  chain.class_sizes.push_back(1);
  if (has_c1) {
    chain.class_names.push_back("C1");
    chain.class_sizes.push_back(asz - 1);
  }
  chain.class_names.push_back("C2");
  chain.class_sizes.push_back(hsz - asz);
  std::vector<int> piece_of_class;  // piece label per C3 class
  for (int j = p.min_piece; j <= k; ++j) {
    if (j == l) continue;
    chain.class_names.push_back("C3_" + std::to_string(j));
    chain.class_sizes.push_back(hsz);
    piece_of_class.push_back(j);
  }

  const int d = chain.class_count();
  const int c0 = 0;
  const int c1 = has_c1 ? 1 : -1;
  const int c2 = has_c1 ? 2 : 1;
  const int first_c3 = c2 + 1;

  chain.step.assign(d, std::vector<Rational>(d, Rational(0)));

  ThreeCoinProbs cl = three_coin_probs(k, l);
  const Rational one(1);
  auto uniform_g = [&](std::vector<Rational>& row, const Rational& mass) {
    for (int c = 0; c < d; ++c) {
      row[c] += mass * Rational(chain.class_sizes[c], p.total_size);
    }
  };
  auto uniform_piece_l = [&](std::vector<Rational>& row,
                             const Rational& mass) {
    row[c0] += mass / Rational(hsz);
    if (has_c1) row[c1] += mass * Rational(asz - 1, hsz);
    row[c2] += mass * Rational(hsz - asz, hsz);
  };

  const Rational m2 = (one - cl.p1) * cl.p2;
  const Rational m3 = (one - cl.p1) * (one - cl.p2) * cl.p3;
  const Rational m4 = (one - cl.p1) * (one - cl.p2) * (one - cl.p3);

  // Start vertex and (when present) the rest of its copy: the third coin
  // re-randomizes inside the shared copy.
  {
    std::vector<Rational>& row = chain.step[c0];
    uniform_g(row, cl.p1);
    uniform_piece_l(row, m2);
    row[c0] += m3 / Rational(asz);
    if (has_c1) row[c1] += m3 * Rational(asz - 1, asz);
    row[c0] += m4;
  }
  if (has_c1) {
    std::vector<Rational>& row = chain.step[c1];
    uniform_g(row, cl.p1);
    uniform_piece_l(row, m2);
    row[c0] += m3 / Rational(asz);
    row[c1] += m3 * Rational(asz - 1, asz);
    row[c1] += m4;
  }
  {
    // Vertices of the piece outside the copy: their own copy stays in C2.
    std::vector<Rational>& row = chain.step[c2];
    uniform_g(row, cl.p1);
    uniform_piece_l(row, m2);
    row[c2] += m3 + m4;
  }
  for (int idx = 0; idx < static_cast<int>(piece_of_class.size()); ++idx) {
    int j = piece_of_class[idx];
    ThreeCoinProbs cj = three_coin_probs(k, j);
    std::vector<Rational>& row = chain.step[first_c3 + idx];
    uniform_g(row, cl.p1);
    row[first_c3 + idx] += (one - cl.p1);  // second and third coins stay in H_j
    (void)cj;
  }

  for (int r = 0; r < d; ++r) {
    Rational sum(0);
    for (int c = 0; c < d; ++c) sum += chain.step[r][c];
    if (sum != 1) {
      throw std::logic_error("lumped row " + std::to_string(r) +
                             " does not sum to one");
    }
  }
  return chain;
}

OneStepLaw one_step_law(int k, int l) {
  OneStepLaw law;
  law.chain = lumped_chain(k, l);
  law.class_mass = law.chain.step[0];
  return law;
}

namespace {

using MatB = std::vector<std::vector<BigFloat>>;

MatB identity(int d) {
  MatB m(d, std::vector<BigFloat>(d, BigFloat(0)));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

MatB multiply(const MatB& a, const MatB& b) {
  const int d = static_cast<int>(a.size());
  MatB out(d, std::vector<BigFloat>(d, BigFloat(0)));
  for (int i = 0; i < d; ++i) {
    for (int k2 = 0; k2 < d; ++k2) {
      if (a[i][k2].is_zero()) continue;
      const BigFloat& s = a[i][k2];
      for (int j = 0; j < d; ++j) out[i][j] += s * b[k2][j];
    }
  }
  return out;
}

// e^{t(P - I)} by scaling and squaring of the uniformized series
// e^{-s} sum (sP)^j / j!; all terms nonnegative, truncation below 2^-80.
MatB expm_uniformized(const MatB& p, double t) {
  const int d = static_cast<int>(p.size());
  BigFloat ts(t);
  int squarings = 0;
  while (ts > 1) {
    ts /= 2;
    ++squarings;
  }
  constexpr int kTerms = 48;
  MatB x = identity(d);
  MatB term = identity(d);
  for (int j = 1; j <= kTerms; ++j) {
    term = multiply(term, p);
    BigFloat scale = ts / j;
    for (auto& row : term)
      for (auto& v : row) v *= scale;
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c) x[i][c] += term[i][c];
  }
  BigFloat damp = exp(-ts);
  for (auto& row : x)
    for (auto& v : row) v *= damp;
  for (int s = 0; s < squarings; ++s) x = multiply(x, x);
  return x;
}

MatB to_bigfloat(const LumpedChain& chain) {
  const int d = chain.class_count();
  MatB p(d, std::vector<BigFloat>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p[i][j] = BigFloat(chain.step[i][j]);
  return p;
}

}  // namespace

std::vector<BigFloat> lumped_heat_row(const LumpedChain& chain, double t) {
  if (t < 0) throw Error(ErrorCode::NegativeTime, "lumped_heat_row");
  MatB x = expm_uniformized(to_bigfloat(chain), t);
  return x[0];
}

BigFloat lumped_deviation(const LumpedChain& chain, double t) {
  std::vector<BigFloat> row = lumped_heat_row(chain, t);
  const int d = chain.class_count();
  BigFloat dev(0);
  BigFloat n(chain.params.total_size);
  for (int c = 0; c < d; ++c) {
    BigFloat ratio = row[c] * n / BigFloat(chain.class_sizes[c]) - 1;
    dev = std::max(dev, BigFloat(abs(ratio)));
  }
  return dev;
}

ConstructionTau tau_construction(int k, double epsilon) {
  if (k < 3 || k > 16) {
    throw Error(ErrorCode::KOutOfRange, "tau_construction needs 3 <= k <= 16");
  }
  ConstructionParams p = construction_sizes(k);
  ConstructionTau result;
  const BigFloat eps(epsilon);
  for (int l = p.min_piece; l <= k; ++l) {
    LumpedChain chain = lumped_chain(k, l);
    double hi = 1.0;
    while (lumped_deviation(chain, hi) > eps) hi *= 2.0;
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    if (lo == 0.0 && lumped_deviation(chain, 0.0) <= eps) {
      result.per_piece.push_back({l, 0.0});
      continue;
    }
    while (hi - lo > 1e-12 * hi) {
      double mid = 0.5 * (lo + hi);
      if (lumped_deviation(chain, mid) > eps) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    result.per_piece.push_back({l, hi});
    result.tau = std::max(result.tau, hi);
  }
  return result;
}

RhoLowerBound rho_lower_bound(int k) {
  if (k < 3) throw Error(ErrorCode::KTooSmall, "rho_lower_bound needs k >= 3");
  ConstructionParams p = construction_sizes(k);
  const BigFloat n(p.total_size);
  const BigFloat hsz(p.piece_size);
  const BigFloat k2k = BigFloat(k) / BigFloat(BigInt(1) << k);
  const BigFloat pi_star = 1 / n;

  RhoLowerBound out;
  out.value = 0;
  for (int l = p.min_piece; l <= k; ++l) {
    const BigFloat asz(p.a_size(l));
    const BigFloat two_lk = BigFloat(1) / BigFloat(BigInt(1) << (k - l));
    // Boundary weight of the copy A~_l over its internal weight, then the
    // sandwich division by 1 - pi(A~_l).
    BigFloat phi = ((hsz - asz) * (two_lk / hsz + k2k / n) +
                    (n - hsz) * (k2k / n)) /
                   (2 + k2k);
    BigFloat pi_al = asz / n;
    BigFloat lambda_ub = phi / (1 - pi_al);

    BigFloat r_from = pi_al;  // = 1 / (m 2^(2^l))
    BigFloat r_to = 1 / (BigFloat(p.piece_count) *
                         BigFloat(BigInt(1) << (1L << (l - 1))));
    r_from = std::max(r_from, BigFloat(4 * pi_star));
    r_to = std::min(r_to, BigFloat(8));
    if (!(r_to > r_from)) continue;

    BigFloat contribution = 2 * log(r_to / r_from) / lambda_ub;
    out.bands.push_back({l, lambda_ub, r_from, r_to, contribution});
    out.value += contribution;
  }
  out.ratio_to_k2k = static_cast<double>(
      out.value / (BigFloat(k) * BigFloat(BigInt(1) << k)));
  return out;
}

namespace {

long sample_poisson(CounterStream& rng, double t) {
  long count = 0;
  double acc = 0.0;
  while (true) {
    acc += -std::log1p(-rng.next_unit());
    if (acc > t) break;
    ++count;
  }
  return count;
}

}  // namespace

WalkStatistics simulate_walk(int k, int l_start, long steps,
                             std::uint64_t seed, int replicas,
                             bool poissonized, double time) {
  ConstructionParams p = construction_sizes(k);
  if (!p.valid_piece(l_start)) {
    throw Error(ErrorCode::BadPieceLabel, "simulate_walk");
  }
  if (steps < 1) {
    throw Error(ErrorCode::BadInputFile, "steps must be >= 1");
  }
  LumpedChain chain = lumped_chain(k, l_start);

  // Per-piece coin probabilities as doubles (exact dyadic values except p1).
  std::vector<double> p2(k + 1, 0.0), p3(k + 1, 0.0);
  for (int l = p.min_piece; l <= k; ++l) {
    ThreeCoinProbs c = three_coin_probs(k, l);
    p2[l] = static_cast<double>(Rational(c.p2));
    p3[l] = static_cast<double>(Rational(c.p3));
  }
  const double p1 =
      static_cast<double>(three_coin_probs(k, l_start).p1);

  // Class-sampling probabilities (underflow to zero for huge k is benign:
  // such classes are never hit in any feasible number of replicas).
  const double inv_a = static_cast<double>(Rational(1, p.a_size(l_start)));
  const double inv_h = static_cast<double>(Rational(1, p.piece_size));
  const double a_over_h =
      static_cast<double>(Rational(p.a_size(l_start), p.piece_size));

  const bool has_c1 = p.a_size(l_start) > 1;
  const int c0 = 0;
  const int c1 = has_c1 ? 1 : -1;
  const int c2 = has_c1 ? 2 : 1;
  const int first_c3 = c2 + 1;
  auto c3_index = [&](int piece) {
    int idx = first_c3;
    for (int j = p.min_piece; j <= k; ++j) {
      if (j == l_start) continue;
      if (j == piece) return idx;
      ++idx;
    }
    return -1;
  };

  WalkStatistics stats;
  stats.k = k;
  stats.l_start = l_start;
  stats.steps = steps;
  stats.seed = seed;
  stats.replicas = replicas;
  stats.poissonized = poissonized;
  stats.time = time;
  stats.class_names = chain.class_names;
  stats.final_class_counts.assign(chain.class_count(), 0);

  long survived1 = 0, survived12 = 0, survived123 = 0;

  for (int r = 0; r < replicas; ++r) {
    CounterStream rng(mix64(seed, 0x5a1cull, static_cast<std::uint64_t>(r)));
    long nsteps = poissonized ? sample_poisson(rng, time) : steps;

    WalkTrace trace;
    trace.steps = nsteps;
    int level = 0;
    int piece = l_start;
    for (long s = 1; s <= nsteps; ++s) {
      if (rng.next_unit() < p1) {
        if (trace.tau1 < 0) trace.tau1 = s;
        level = 3;
        piece = p.min_piece + static_cast<int>(rng.next_below(p.piece_count));
      } else if (rng.next_unit() < p2[piece]) {
        if (trace.tau2 < 0) trace.tau2 = s;
        level = std::max(level, 2);
      } else if (rng.next_unit() < p3[piece]) {
        if (trace.tau3 < 0) trace.tau3 = s;
        level = std::max(level, 1);
      }
    }

    // Sample the final lumped class from the mixing level.
    int final_class;
    if (level == 3 && piece != l_start) {
      final_class = c3_index(piece);
    } else if (level == 0) {
      final_class = c0;
    } else if (level == 1) {
      final_class = (rng.next_unit() < inv_a && has_c1) ? c0
                    : has_c1                            ? c1
                                                        : c0;
    } else {  // uniform over the start piece
      double u = rng.next_unit();
      if (u < inv_h) {
        final_class = c0;
      } else if (has_c1 && u < a_over_h) {
        final_class = c1;
      } else {
        final_class = c2;
      }
    }
    trace.final_class = final_class;
    ++stats.final_class_counts[final_class];

    if (trace.tau1 < 0) ++survived1;
    if (trace.tau1 < 0 && trace.tau2 < 0) ++survived12;
    if (trace.tau1 < 0 && trace.tau2 < 0 && trace.tau3 < 0) ++survived123;
  }

  auto finish = [&](long count, double& emp, double& se) {
    emp = static_cast<double>(count) / replicas;
    se = std::sqrt(std::max(emp * (1.0 - emp), 1.0 / replicas) / replicas);
  };
  finish(survived1, stats.empirical_tau1_gt, stats.se_tau1);
  finish(survived12, stats.empirical_tau12_gt, stats.se_tau12);
  finish(survived123, stats.empirical_tau123_gt, stats.se_tau123);

  const double q1 = 1.0 - p1;
  const double q12 = q1 * (1.0 - p2[l_start]);
  const double q123 = q12 * (1.0 - p3[l_start]);
  if (poissonized) {
    stats.exact_tau1 = std::exp(-(1.0 - q1) * time);
    stats.exact_tau12 = std::exp(-(1.0 - q12) * time);
    stats.exact_tau123 = std::exp(-(1.0 - q123) * time);
  } else {
    stats.exact_tau1 = std::pow(q1, static_cast<double>(steps));
    stats.exact_tau12 = std::pow(q12, static_cast<double>(steps));
    stats.exact_tau123 = std::pow(q123, static_cast<double>(steps));
  }
  return stats;
}

}  // namespace specmix
