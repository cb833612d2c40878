#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specmix/experiments.hpp"
#include "specmix/profile.hpp"
#include "test_util.hpp"

using namespace specmix;
using specmix::test::throws_error;

TEST_CASE("spectral profile of complete graphs is flat") {
  SpectralProfileCurve c2 = spectral_profile(complete_graph(2));
  CHECK(c2.pi_star == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c2.value_at(0.5) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c2.value_at(3.0) == doctest::Approx(2.0).epsilon(1e-9));

  SpectralProfileCurve c3 = spectral_profile(complete_graph(3));
  CHECK(c3.value_at(1.0 / 3) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(c3.value_at(0.9) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(c3.value_at(2.0) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("spectral profile of the weighted path via enumeration") {
  WeightedGraph path = build_graph(3, {{0, 1, 2.0}, {1, 2, 1.0}});
  SpectralProfileCurve curve = spectral_profile(path);
  CHECK(curve.pi_star == doctest::Approx(1.0 / 6).epsilon(1e-12));
  // The lightest vertex {2} realizes the first breakpoint.
  double expected = oracles::lambda_enumerate(path, VertexSet({2}));
  CHECK(curve.value_at(1.0 / 6) == doctest::Approx(expected).epsilon(1e-9));

  // Full curve against the enumeration oracle at every breakpoint.
  for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
    double r = curve.breakpoints[i];
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < 8u; ++mask) {
      VertexSet a = VertexSet::from_mask(mask);
      if (path.measure(a) <= r + 1e-12) {
        best = std::min(best, oracles::lambda_enumerate(path, a));
      }
    }
    CHECK(curve.values[i] == doctest::Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("profile is non-increasing and ends at the gap") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    CAPTURE(sg.name);
    SpectralProfileCurve curve = spectral_profile(sg.graph);
    for (std::size_t i = 0; i + 1 < curve.values.size(); ++i) {
      CHECK(curve.values[i + 1] <= curve.values[i] + 1e-12);
    }
    CHECK(curve.value_at(1.0) == doctest::Approx(curve.gap).epsilon(1e-5));
  }
}

TEST_CASE("profile rejects oversized graphs") {
  std::vector<Edge> edges;
  for (int v = 1; v < 21; ++v) edges.push_back({0, v, 1.0});
  WeightedGraph star21 = build_graph(21, edges);
  CHECK(throws_error([&] { spectral_profile(star21); },
                     ErrorCode::TooLargeForExact));
}

TEST_CASE("rayleigh sets") {
  RayleighSets r2 = rayleigh_sets(complete_graph(2));
  REQUIRE(r2.sets.size() == 1);
  CHECK(r2.sets[0].k == 1);
  CHECK(r2.sets[0].set.size() == 1);
  CHECK(r2.sets[0].lambda == doctest::Approx(2.0).epsilon(1e-9));

  RayleighSets r4 = rayleigh_sets(complete_graph(4));
  REQUIRE(r4.sets.size() == 2);
  CHECK(r4.sets[0].k == 1);
  CHECK(r4.sets[1].k == 2);
  CHECK(r4.sets[1].set.size() == 1);  // only singletons have measure <= 1/4
  // Ties broken lexicographically.
  CHECK(r4.sets[0].set.vertices == std::vector<int>{0});
  CHECK(r4.sets[1].set.vertices == std::vector<int>{0});
}

TEST_CASE("rayleigh lambda is non-decreasing in k") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    RayleighSets rs = rayleigh_sets(sg.graph);
    for (std::size_t i = 0; i + 1 < rs.sets.size(); ++i) {
      CHECK(rs.sets[i].k + 1 == rs.sets[i + 1].k);
      CHECK(rs.sets[i + 1].lambda >= rs.sets[i].lambda - 1e-9);
      CHECK(sg.graph.measure(rs.sets[i].set) <=
            std::ldexp(1.0, -rs.sets[i].k) + 1e-12);
    }
  }
}

TEST_CASE("rho closed forms") {
  RhoResult r2 = rho(complete_graph(2));
  CHECK(r2.rho == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(r2.dyadic_sum == doctest::Approx(0.5).epsilon(1e-9));

  RhoResult r3 = rho(complete_graph(3));
  CHECK(r3.rho == doctest::Approx(4.0 / 3 * std::log(6.0)).epsilon(1e-9));

  WeightedGraph k1 = build_graph(1, {{0, 0, 1.0}});
  CHECK(throws_error([&] { rho(k1); }, ErrorCode::SingletonGraph));
}

TEST_CASE("rho band additivity and quadrature oracle") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  int checked = 0;
  for (const SuiteGraph& sg : suite.graphs) {
    if (sg.graph.num_vertices() > 9) continue;
    CAPTURE(sg.name);
    RhoResult r = rho(sg.graph);
    double sum = 0.0;
    for (const RhoBand& b : r.bands) {
      CHECK(b.contribution > 0.0);
      sum += b.contribution;
    }
    CHECK(std::abs(sum - r.rho) <= 1e-10);

    SpectralProfileCurve curve = spectral_profile(sg.graph);
    // Midpoint panels straddling curve jumps limit the quadrature accuracy.
    double quad = oracles::rho_quadrature(curve, 0.5, 400000);
    CHECK(r.rho == doctest::Approx(quad).epsilon(1e-3));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("changing epsilon from 1/2 to 1/4 adds (2/gap) log 2 when flat") {
  for (const WeightedGraph& g : {complete_graph(2), complete_graph(3)}) {
    double gap = spectral_gap(g);
    RhoResult half = rho(g, 0.5);
    RhoResult quarter = rho(g, 0.25);
    CHECK(quarter.rho - half.rho ==
          doctest::Approx(2.0 / gap * std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("rho vs dyadic sum stays within the calibrated window") {
  SuiteSpec suite = SuiteSpec::default_suite(0);
  for (const SuiteGraph& sg : suite.graphs) {
    CAPTURE(sg.name);
    RhoResult r = rho(sg.graph);
    double ratio = r.rho / r.dyadic_sum;
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 10.0);
  }
  RhoResult k2 = rho(complete_graph(2));
  CHECK(k2.rho / k2.dyadic_sum == doctest::Approx(2.772588).epsilon(1e-5));
}
