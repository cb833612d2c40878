#include "specmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specmix/rng.hpp"

namespace specmix {

namespace {

// Quadratic-form data restricted to the coordinates of A:
//   numerator   f' L f      with L = Pi (I - K)  (symmetric by reversibility)
//   denominator f' Pi f - (pi' f)^2              (positive definite on A != G)
struct ReducedProblem {
  Eigen::MatrixXd lap;     // L restricted to A
  Eigen::VectorXd pi;      // pi restricted to A
  double set_measure;      // pi(A)

  double numerator(const Eigen::VectorXd& f) const {
    return f.dot(lap * f);
  }
  double denominator(const Eigen::VectorXd& f) const {
    double l2 = f.array().square().matrix().dot(pi);
    double l1 = f.dot(pi);
    return l2 - l1 * l1;
  }
  double quotient(const Eigen::VectorXd& f) const {
    double l2 = f.array().square().matrix().dot(pi);
    double den = denominator(f);
    // Near-constant f makes the quotient 0/0 rounding noise; reject it.
    if (!(den > 1e-12 * std::max(l2, 1e-300))) {
      return std::numeric_limits<double>::infinity();
    }
    return numerator(f) / den;
  }
};

ReducedProblem reduce(const WeightedGraph& g, const VertexSet& a) {
  const int m = a.size();
  ReducedProblem p;
  p.pi.resize(m);
  for (int i = 0; i < m; ++i) p.pi[i] = g.stationary(a.vertices[i]);
  p.set_measure = p.pi.sum();
  // L(x,y) = pi(x) delta_{xy} - w(x,y)/W restricted to A.
  p.lap = Eigen::MatrixXd::Zero(m, m);
  std::vector<int> pos(g.num_vertices(), -1);
  for (int i = 0; i < m; ++i) pos[a.vertices[i]] = i;
  for (int i = 0; i < m; ++i) {
    int x = a.vertices[i];
    p.lap(i, i) += p.pi[i];
    for (const auto& [y, w] : g.neighbors(x)) {
      if (pos[y] >= 0) p.lap(i, pos[y]) -= w / g.total_weight();
    }
  }
  p.lap = 0.5 * (p.lap + p.lap.transpose()).eval();
  return p;
}

// Smallest eigenpair of the symmetrized Dirichlet submatrix; the eigenvector
// maps back to an L^2(pi) minimizer after dividing by sqrt(pi).
std::pair<double, Eigen::VectorXd> dirichlet_ground_state(
    const WeightedGraph& g, const VertexSet& a) {
  Eigen::MatrixXd sub = g.dirichlet_symmetrized(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
  Eigen::VectorXd phi = es.eigenvectors().col(0);
  Eigen::VectorXd f(a.size());
  for (int i = 0; i < a.size(); ++i) {
    f[i] = phi[i] / std::sqrt(g.stationary(a.vertices[i]));
  }
  return {es.eigenvalues()[0], f};
}

// Projected-gradient descent of the quotient over the nonnegative cone.
// Monotone in the objective, so any start inside the sandwich stays there.
double project_and_descend(const ReducedProblem& p, Eigen::VectorXd& f,
                           int max_iter = 400) {
  const int m = static_cast<int>(f.size());
  f = f.cwiseMax(0.0);
  double q = p.quotient(f);
  if (!std::isfinite(q)) return q;
  f /= std::sqrt(p.denominator(f));
  double step = 1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd lf = p.lap * f;
    double l1 = f.dot(p.pi);
    Eigen::VectorXd grad =
        2.0 * (lf - q * (p.pi.cwiseProduct(f) - l1 * p.pi));
    double gnorm = grad.norm();
    if (gnorm < 1e-15 * std::max(1.0, std::abs(q))) break;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd cand = (f - step * grad).cwiseMax(0.0);
      double cq = p.quotient(cand);
      if (std::isfinite(cq) && cq < q - 1e-16 * std::abs(q)) {
        cand /= std::sqrt(p.denominator(cand));
        f = cand;
        q = cq;
        step *= 1.5;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    (void)m;
  }
  return q;
}

// On a fixed support the interior stationarity condition is the generalized
// eigenproblem L f = mu (Pi - pi pi') f. Evaluates every eigenvector that is
// nonnegative after a sign flip and keeps whichever lowers the quotient.
void polish_on_support(const ReducedProblem& p, const std::vector<int>& sup,
                       Eigen::VectorXd& best_f, double& best_q,
                       Eigen::VectorXd* ground_out = nullptr) {
  const int m = static_cast<int>(p.pi.size());
  const int s = static_cast<int>(sup.size());
  if (s == 0) return;
  Eigen::MatrixXd lsub(s, s);
  Eigen::MatrixXd bsub(s, s);
  Eigen::VectorXd psub(s);
  for (int i = 0; i < s; ++i) psub[i] = p.pi[sup[i]];
  if (psub.sum() >= 1.0 - 1e-14) return;  // B singular on the full set
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      lsub(i, j) = p.lap(sup[i], sup[j]);
      bsub(i, j) = -psub[i] * psub[j];
    }
    bsub(i, i) += psub[i];
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(lsub, bsub);
  if (ges.info() != Eigen::Success) return;
  for (int col = 0; col < s; ++col) {
    Eigen::VectorXd x = ges.eigenvectors().col(col);
    if (x.dot(psub) < 0) x = -x;
    if (col == 0 && ground_out != nullptr) {
      *ground_out = Eigen::VectorXd::Zero(m);
      for (int i = 0; i < s; ++i) (*ground_out)[sup[i]] = x[i];
    }
    if (x.minCoeff() < -1e-8 * x.cwiseAbs().maxCoeff()) continue;
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < s; ++i) cand[sup[i]] = std::max(x[i], 0.0);
    double cq = p.quotient(cand);
    if (cq < best_q) {
      best_q = cq;
      best_f = cand;
    }
  }
}

// Active-set sweep: solve the stationarity problem on the whole set, drop
// the negative coordinates of the ground eigenvector, and repeat on the
// shrinking support. Each visited support also contributes its nonnegative
// eigenvectors as candidates.
void truncation_sweep(const ReducedProblem& p, Eigen::VectorXd& best_f,
                      double& best_q) {
  const int m = static_cast<int>(p.pi.size());
  std::vector<int> sup(m);
  for (int i = 0; i < m; ++i) sup[i] = i;
  for (int round = 0; round < m; ++round) {
    Eigen::VectorXd ground;
    polish_on_support(p, sup, best_f, best_q, &ground);
    if (ground.size() == 0) break;
    std::vector<int> next;
    for (int i : sup) {
      if (ground[i] > 1e-12 * ground.cwiseAbs().maxCoeff()) next.push_back(i);
    }
    if (next.size() == sup.size() || next.empty()) break;
    sup = std::move(next);
  }
}

void try_eigen_polish(const ReducedProblem& p, Eigen::VectorXd& best_f,
                      double& best_q) {
  const int m = static_cast<int>(best_f.size());
  double fmax = best_f.maxCoeff();
  if (!(fmax > 0.0)) return;
  std::vector<int> sup;
  for (int i = 0; i < m; ++i) {
    if (best_f[i] > 1e-10 * fmax) sup.push_back(i);
  }
  polish_on_support(p, sup, best_f, best_q);
}

Eigen::VectorXd expand(const VertexSet& a, const Eigen::VectorXd& reduced,
                       int n) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < a.size(); ++i) f[a.vertices[i]] = reduced[i];
  return f;
}

std::uint64_t set_key(const VertexSet& a, std::uint64_t seed) {
  std::uint64_t h = mix64(seed, 0x5f4bu);
  for (int v : a.vertices) h = mix64(h, static_cast<std::uint64_t>(v) + 1);
  return h;
}

}  // namespace

double lambda0(const WeightedGraph& g, const VertexSet& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "lambda0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      g.dirichlet_symmetrized(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

FaberKrahnValue lambda_fk(const WeightedGraph& g, const VertexSet& a,
                          int restarts, std::uint64_t seed) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "lambda_fk");
  const int n = g.num_vertices();
  FaberKrahnValue out;
  out.set = a;

  if (a.size() == n && n == 1) {
    throw Error(ErrorCode::SingletonFullGraph, "no nonconstant test function");
  }

  // Singleton: one ray of test functions, quotient in closed form.
  if (a.size() == 1) {
    int v = a.vertices[0];
    double kvv = g.weight(v, v) / g.vertex_weight(v);
    double piv = g.stationary(v);
    out.lambda0 = 1.0 - kvv;
    out.lambda = (1.0 - kvv) / (1.0 - piv);
    out.minimizer = Eigen::VectorXd::Zero(n);
    out.minimizer[v] = 1.0;
    out.method = FkMethod::ExactEigen;
    return out;
  }

  ReducedProblem p = reduce(g, a);
  auto [lam0, ground] = dirichlet_ground_state(g, a);
  out.lambda0 = lam0;

  const bool full_set = a.size() == n;
  Eigen::VectorXd best_f;
  double best_q = std::numeric_limits<double>::infinity();

  auto consider = [&](Eigen::VectorXd f) {
    double q = project_and_descend(p, f);
    if (q < best_q) {
      best_q = q;
      best_f = f;
    }
  };

  if (full_set) {
    // Nonnegativity is free here (numerator and variance are shift
    // invariant), so the shifted gap eigenvector attains the infimum.
    Eigen::MatrixXd sym = g.symmetrized_laplacian();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd psi(n);
    for (int i = 0; i < n; ++i) {
      psi[i] = es.eigenvectors()(i, 1) / std::sqrt(g.stationary(i));
    }
    Eigen::VectorXd shifted = (psi.array() - psi.minCoeff()).matrix();
    consider(shifted);
  } else {
    consider(ground.cwiseAbs());
    consider(Eigen::VectorXd::Ones(a.size()));
    truncation_sweep(p, best_f, best_q);
    // Face seeds: minimizers can live on sparse supports (e.g. a vertex
    // that is isolated inside A), which interior starts rarely reach.
    for (int i = 0; i < a.size(); ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(a.size());
      e[i] = 1.0;
      consider(e);
    }
  }

  CounterStream rng(set_key(a, seed));
  int total_restarts = std::max(restarts, 16);
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (int r = 0; r < total_restarts; ++r) {
      Eigen::VectorXd f(a.size());
      for (int i = 0; i < a.size(); ++i) f[i] = rng.next_uniform(0.0, 1.0);
      consider(f);
    }
    if (!full_set) try_eigen_polish(p, best_f, best_q);

    double hi = full_set
                    ? std::numeric_limits<double>::infinity()
                    : out.lambda0 / (1.0 - p.set_measure);
    if (best_q <= hi + 1e-7 * std::max(1.0, hi)) break;
    total_restarts *= 4;  // retry harder before falling back to the bound
    if (attempt == 1) {
      out.lambda = hi;
      out.minimizer = expand(a, ground.cwiseAbs(), n);
      out.method = FkMethod::Bound;
      return out;
    }
  }

  out.lambda = p.quotient(best_f);
  out.minimizer = expand(a, best_f, n);
  out.method = FkMethod::NumericMin;
  return out;
}

double spectral_gap(const WeightedGraph& g) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "spectral_gap");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      g.symmetrized_laplacian(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[1];
}

double conductance(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "conductance");
  std::vector<char> in_s(g.num_vertices(), 0);
  for (int x : s.vertices) in_s[x] = 1;
  double boundary = 0.0, inside = 0.0;
  for (int x : s.vertices) {
    inside += g.vertex_weight(x);
    for (const auto& [y, w] : g.neighbors(x)) {
      if (!in_s[y]) boundary += w;
    }
  }
  return boundary / inside;
}

double faber_krahn_quotient(const WeightedGraph& g, const VertexFunction& f) {
  DirichletFormResult r = dirichlet_form_and_norms(g, f);
  double den = r.l2_norm * r.l2_norm - r.l1_norm * r.l1_norm;
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return r.dirichlet / den;
}

namespace {

double entropy_of_square(const Eigen::VectorXd& pi, const Eigen::VectorXd& f) {
  double m2 = f.array().square().matrix().dot(pi);
  if (!(m2 > 0.0)) return 0.0;
  double ent = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    double h = f[i] * f[i];
    if (h > 0.0) ent += pi[i] * h * std::log(h / m2);
  }
  return ent;
}

// Quotient along f = 1 + g with small entrywise g; entropy evaluated via
// log1p on the deviations to avoid the 0/0 cancellation near constants.
double near_constant_quotient(const WeightedGraph& g,
                              const Eigen::VectorXd& bump) {
  Eigen::VectorXd pi = g.stationary();
  const int n = g.num_vertices();
  double num = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    double d = bump[e.u] - bump[e.v];
    num += e.w / g.total_weight() * d * d;
  }
  double m = 0.0;  // E[f^2] - 1 computed without cancellation
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 2.0 * bump[i] + bump[i] * bump[i];
    m += pi[i] * x[i];
  }
  double ent = 0.0;
  for (int i = 0; i < n; ++i) {
    ent += pi[i] * (1.0 + x[i]) * std::log1p(x[i]);
  }
  ent -= (1.0 + m) * std::log1p(m);
  if (!(ent > 0.0)) return std::numeric_limits<double>::infinity();
  return num / ent;
}

}  // namespace

double log_sobolev_quotient(const WeightedGraph& g, const VertexFunction& f) {
  double num = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    double d = f[e.u] - f[e.v];
    num += e.w / g.total_weight() * d * d;
  }
  double ent = entropy_of_square(g.stationary(), f);
  if (!(ent > 0.0)) return std::numeric_limits<double>::infinity();
  return num / ent;
}

LogSobolevValue log_sobolev(const WeightedGraph& g, int restarts,
                            double tolerance) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "log_sobolev");
  const int n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::SingletonGraph, "log_sobolev");
  Eigen::VectorXd pi = g.stationary();

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    lap(x, x) += pi[x];
    for (const auto& [y, w] : g.neighbors(x)) {
      lap(x, y) -= w / g.total_weight();
    }
  }
  lap = 0.5 * (lap + lap.transpose()).eval();

  constexpr double kClamp = 1e-12;  // keeps ln finite; below tolerance
  auto quotient = [&](const Eigen::VectorXd& f) {
    return f.dot(lap * f) / std::max(entropy_of_square(pi, f), 1e-300);
  };
  // Projected stationarity residual: gradient components pushing a clamped
  // coordinate further down are feasible-direction-free and do not count.
  auto residual_at = [&](const Eigen::VectorXd& f, double q) {
    double m2 = f.array().square().matrix().dot(pi);
    Eigen::VectorXd grad = 2.0 * (lap * f);
    for (int i = 0; i < n; ++i) {
      double h = std::max(f[i] * f[i], 1e-300);
      grad[i] -= q * 2.0 * pi[i] * f[i] * std::log(h / m2);
      if (f[i] <= 2e-12 && grad[i] > 0.0) grad[i] = 0.0;
    }
    double ent = entropy_of_square(pi, f);
    // Note: when the infimum is approached only in the constant-function
    // limit this residual stays O(1); the value is then certified instead
    // by being an achieved quotient at the near-constant candidate.
    return grad.norm() / std::max(ent, 1e-300) / std::max(1.0, q);
  };

  Eigen::VectorXd best_f;
  double best_q = std::numeric_limits<double>::infinity();
  int used = 0;

  // Entropy below ~1e-12 (at unit norm) is dominated by rounding noise in
  // the log sums; such points are handled by the near-constant candidate.
  constexpr double kEntropyFloor = 1e-12;
  auto descend = [&](Eigen::VectorXd f) {
    f = f.cwiseMax(kClamp);
    f /= std::sqrt(f.array().square().matrix().dot(pi));
    double ent = entropy_of_square(pi, f);
    if (!(ent > kEntropyFloor)) return;
    double q = quotient(f);
    double step = 0.5;
    for (int iter = 0; iter < 600; ++iter) {
      double m2 = f.array().square().matrix().dot(pi);
      Eigen::VectorXd grad = 2.0 * (lap * f);
      for (int i = 0; i < n; ++i) {
        double h = std::max(f[i] * f[i], 1e-300);
        grad[i] -= q * 2.0 * pi[i] * f[i] * std::log(h / m2);
      }
      double ent_now = entropy_of_square(pi, f);
      grad /= std::max(ent_now, 1e-300);
      if (grad.norm() <= tolerance * std::max(1.0, q)) break;
      bool improved = false;
      for (int bt = 0; bt < 50; ++bt) {
        Eigen::VectorXd cand = (f - step * grad).cwiseMax(kClamp);
        cand /= std::sqrt(cand.array().square().matrix().dot(pi));
        if (entropy_of_square(pi, cand) > kEntropyFloor) {
          double cq = quotient(cand);
          if (cq < q) {
            f = cand;
            q = cq;
            step *= 1.4;
            improved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (q < best_q) {
      best_q = q;
      best_f = f;
    }
  };

  // Near-constant candidate: the limit along f = 1 + eps psi_2 attains
  // gap/2 whenever that is the infimum.
  Eigen::MatrixXd sym = g.symmetrized_laplacian();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd psi(n);
  for (int i = 0; i < n; ++i) {
    psi[i] = es.eigenvectors()(i, 1) / std::sqrt(pi[i]);
  }
  psi /= std::sqrt(psi.array().square().matrix().dot(pi));
  constexpr double kEps = 1e-7;
  {
    double q = near_constant_quotient(g, kEps * psi);
    if (q < best_q) {
      best_q = q;
      best_f = (Eigen::VectorXd::Ones(n) + kEps * psi).eval();
    }
  }

  descend(Eigen::VectorXd::Ones(n) + 0.2 * psi);
  ++used;
  CounterStream rng(mix64(0x10e50b01ull, static_cast<std::uint64_t>(n)));
  for (int r = 0; r < restarts; ++r, ++used) {
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.next_uniform(0.05, 1.95);
    descend(f);
  }

  LogSobolevValue out;
  out.alpha = best_q;
  out.minimizer = best_f;
  out.restarts_used = used;
  out.residual = residual_at(best_f, best_q);
  return out;
}

}  // namespace specmix
