#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specmix/experiments.hpp"
#include "specmix/spectral.hpp"
#include "test_util.hpp"

using namespace specmix;
using specmix::test::throws_error;

TEST_CASE("lambda0 closed cases") {
  WeightedGraph k3 = complete_graph(3);
  CHECK(lambda0(k3, VertexSet({0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambda0(k3, VertexSet({0, 1})) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(lambda0(k3, VertexSet::full(3))) <= 1e-10);
  CHECK(throws_error([&] { lambda0(k3, VertexSet{}); }, ErrorCode::EmptySet));
}

TEST_CASE("lambda_fk closed cases") {
  WeightedGraph k2 = complete_graph(2);
  WeightedGraph k3 = complete_graph(3);

  FaberKrahnValue v2 = lambda_fk(k2, VertexSet({0}));
  CHECK(v2.lambda == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(v2.method == FkMethod::ExactEigen);

  FaberKrahnValue v3 = lambda_fk(k3, VertexSet({1}));
  CHECK(v3.lambda == doctest::Approx(1.5).epsilon(1e-12));

  FaberKrahnValue pair = lambda_fk(k3, VertexSet({0, 1}));
  CHECK(pair.lambda == doctest::Approx(1.5).epsilon(1e-9));
  // The K_3 pair quotient is constant in the test function.
  Eigen::VectorXd f = Eigen::VectorXd::Zero(3);
  f << 0.7, 0.21, 0.0;
  CHECK(oracles::quotient(k3, f) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("lambda_fk matches the enumeration oracle on small sets") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  int tested = 0;
  for (const SuiteGraph& sg : suite.graphs) {
    const WeightedGraph& g = sg.graph;
    if (g.num_vertices() > 6) continue;
    CAPTURE(sg.name);
    for (std::uint32_t mask = 1; mask < (1u << g.num_vertices()) - 1u;
         ++mask) {
      VertexSet a = VertexSet::from_mask(mask);
      double mine = lambda_fk(g, a).lambda;
      double oracle = oracles::lambda_enumerate(g, a);
      CAPTURE(mask);
      CHECK(mine == doctest::Approx(oracle).epsilon(1e-6));
      ++tested;
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("lambda_fk minimizer reproduces its value") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    const WeightedGraph& g = sg.graph;
    if (g.num_vertices() > 7) continue;
    for (std::uint32_t mask = 1; mask < (1u << g.num_vertices()); ++mask) {
      FaberKrahnValue v = lambda_fk(g, VertexSet::from_mask(mask));
      if (v.method == FkMethod::Bound) continue;
      CHECK(is_nonnegative(v.minimizer));
      CHECK(std::abs(faber_krahn_quotient(g, v.minimizer) - v.lambda) <=
            1e-7 * std::max(1.0, v.lambda));
    }
  }
}

TEST_CASE("sandwich and monotonicity on enumerated subsets") {
  for (const WeightedGraph& g :
       {complete_graph(4), path_graph(5), star_graph(6),
        random_connected_graph(1, 0)}) {
    if (g.num_vertices() > 8) continue;
    const int n = g.num_vertices();
    std::vector<double> lam(1u << n, 0.0), lam0(1u << n, 0.0);
    std::vector<double> measure(1u << n, 0.0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      VertexSet a = VertexSet::from_mask(mask);
      lam0[mask] = lambda0(g, a);
      lam[mask] = lambda_fk(g, a).lambda;
      measure[mask] = g.measure(a);
      if (mask != (1u << n) - 1u) {
        CHECK(lam0[mask] <= lam[mask] + 1e-9);
        CHECK(lam[mask] <= lam0[mask] / (1.0 - measure[mask]) + 1e-7);
      }
    }
    // A subset of B implies lambda(A) >= lambda(B) (and same for lambda0).
    for (std::uint32_t b = 1; b < (1u << n); ++b) {
      for (std::uint32_t a = b; a > 0; a = (a - 1) & b) {
        CHECK(lam0[a] >= lam0[b] - 1e-9);
        CHECK(lam[a] >= lam[b] - 1e-7);
      }
    }
  }
}

TEST_CASE("spectral gap closed forms") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(spectral_gap(complete_graph(n)) ==
          doctest::Approx(static_cast<double>(n) / (n - 1)).epsilon(1e-12));
  }
  CHECK(spectral_gap(cycle_graph(4)) == doctest::Approx(1.0).epsilon(1e-12));

  WeightedGraph disconnected =
      build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK(throws_error([&] { spectral_gap(disconnected); },
                     ErrorCode::Disconnected));
}

TEST_CASE("spectral gap agrees with lambda_fk on the full set") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    if (sg.graph.num_vertices() > 9) continue;
    CAPTURE(sg.name);
    double gap = spectral_gap(sg.graph);
    double fk = lambda_fk(sg.graph, VertexSet::full(sg.graph.num_vertices()))
                    .lambda;
    CHECK(std::abs(gap - fk) <= 1e-5 * std::max(1.0, gap));
  }
}

TEST_CASE("conductance") {
  WeightedGraph k3 = complete_graph(3);
  CHECK(conductance(k3, VertexSet({1})) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambda0(k3, VertexSet({1})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conductance(k3, VertexSet::full(3)) == 0.0);

  WeightedGraph path = path_graph(3);
  CHECK(conductance(path, VertexSet({0})) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("conductance upper-bounds lambda0 on enumerated sets") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    const WeightedGraph& g = sg.graph;
    if (g.num_vertices() > 8) continue;
    for (std::uint32_t mask = 1; mask < (1u << g.num_vertices()); ++mask) {
      VertexSet s = VertexSet::from_mask(mask);
      CHECK(lambda0(g, s) <= conductance(g, s) + 1e-10);
    }
  }
}

TEST_CASE("log-Sobolev constant") {
  WeightedGraph k2 = complete_graph(2);
  LogSobolevValue v = log_sobolev(k2);
  CHECK(v.alpha == doctest::Approx(1.0).epsilon(1e-3));
  double oracle = oracles::log_sobolev_grid_k2(k2);
  CHECK(oracle >= 1.0 - 1e-6);  // grid quotients near a = 1 carry ~1e-7 noise
  CHECK(oracle <= 1.0 + 1e-3);

  WeightedGraph k3 = complete_graph(3);
  LogSobolevValue v3 = log_sobolev(k3);
  CHECK(v3.alpha > 0.0);
  CHECK(v3.alpha <= 0.75 + 1e-6);

  // Constant functions are infeasible: entropy vanishes.
  CHECK(std::isinf(log_sobolev_quotient(k2, Eigen::VectorXd::Constant(2, 1.0))));
}

TEST_CASE("log-Sobolev vs gap across the suite") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    CAPTURE(sg.name);
    LogSobolevValue v = log_sobolev(sg.graph);
    double gap = spectral_gap(sg.graph);
    CHECK(2.0 * v.alpha <= gap * (1.0 + 1e-6));
    // Either a stationary point or certified at the near-constant limit.
    bool stationary = v.residual <= 1e-2;
    bool at_limit = 2.0 * v.alpha >= gap * (1.0 - 1e-2);
    CHECK((stationary || at_limit));
  }
}
