#include <doctest.h>

#include <cmath>

#include "specmix/experiments.hpp"
#include "specmix/rng.hpp"
#include "specmix/rough_isometry.hpp"
#include "test_util.hpp"

using namespace specmix;
using specmix::test::throws_error;

TEST_CASE("path metric basics") {
  PathMetric p3 = path_metric(path_graph(3));
  CHECK(p3(0, 2) == 2.0);
  CHECK(p3(0, 0) == 0.0);

  PathMetric k3 = path_metric(complete_graph(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(k3(a, b) == (a == b ? 0.0 : 1.0));

  WeightedGraph two_edges = build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  PathMetric m = path_metric(two_edges);
  CHECK(std::isinf(m(0, 2)));
  CHECK(m(0, 1) == 1.0);

  // Self-loops do not create shortcuts.
  WeightedGraph loop = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {1, 1, 5.0}});
  CHECK(path_metric(loop)(0, 2) == 2.0);
}

TEST_CASE("path metric symmetry and triangle inequality") {
  for (const WeightedGraph& g :
       {random_connected_graph(4, 0), star_graph(7), cycle_graph(9)}) {
    PathMetric m = path_metric(g);
    for (int a = 0; a < m.n; ++a) {
      for (int b = 0; b < m.n; ++b) {
        CHECK(m(a, b) == m(b, a));
        for (int c = 0; c < m.n; ++c) {
          CHECK(m(a, c) <= m(a, b) + m(b, c));
        }
      }
    }
  }
}

TEST_CASE("rough isometry identity and collapse maps") {
  PathMetric p5 = path_metric(path_graph(5));
  std::vector<int> identity{0, 1, 2, 3, 4};
  CHECK(check_rough_isometry(p5, p5, identity, 1.0).holds);

  WeightedGraph k1 = build_graph(1, {{0, 0, 1.0}});
  PathMetric point = path_metric(k1);
  std::vector<int> collapse(5, 0);
  CHECK(check_rough_isometry(p5, point, collapse, 2.0).holds);

  RoughIsometryReport fail = check_rough_isometry(p5, point, collapse, 1.0);
  CHECK(!fail.holds);
  CHECK(fail.violation == RoughIsometryReport::Violation::PairLower);
  CHECK(fail.witness_a == 0);
  CHECK(fail.witness_b == 2);  // first pair with d/K - K > 0

  CHECK(throws_error(
      [&] { check_rough_isometry(p5, point, {0, 0, 0}, 1.0); },
      ErrorCode::PartialMap));
}

TEST_CASE("rough isometry is monotone in K") {
  PathMetric x = path_metric(random_connected_graph(5, 0));
  PathMetric y = path_metric(random_connected_graph(6, 0));
  CounterStream rng(0x9a);
  std::vector<int> map(x.n);
  for (int i = 0; i < x.n; ++i) {
    map[i] = static_cast<int>(rng.next_below(y.n));
  }
  bool held = false;
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    bool holds = check_rough_isometry(x, y, map, k).holds;
    if (held) CHECK(holds);  // holds at K implies holds at K' >= K
    held = held || holds;
  }
  CHECK(held);  // large enough K always works on finite connected graphs
}

TEST_CASE("binary tree shape") {
  WeightedGraph t1 = binary_tree(1);
  CHECK(t1.num_vertices() == 3);
  CHECK(t1.edges().size() == 2);

  WeightedGraph t3 = binary_tree(3);
  CHECK(t3.num_vertices() == 15);
  CHECK(t3.neighbors(0).size() == 2);
  CHECK(t3.neighbors(14).size() == 1);

  for (int h : {2, 4}) {
    WeightedGraph t = binary_tree(h);
    double total_edges = std::ldexp(1.0, h + 1) - 2.0;
    CHECK(t.stationary(0) ==
          doctest::Approx(2.0 / (2.0 * total_edges)).epsilon(1e-12));
  }
}

TEST_CASE("tree metric agrees with the depth/lca formula") {
  WeightedGraph tree = binary_tree(5);
  PathMetric m = path_metric(tree);
  auto depth = [](int v) {
    int d = 0;
    while (v > 0) {
      v = (v - 1) / 2;
      ++d;
    }
    return d;
  };
  auto lca = [&](int a, int b) {
    while (a != b) {
      if (depth(a) >= depth(b)) a = (a - 1) / 2;
      else b = (b - 1) / 2;
    }
    return a;
  };
  CounterStream rng(0x7ee);
  for (int trial = 0; trial < 100; ++trial) {
    int a = static_cast<int>(rng.next_below(tree.num_vertices()));
    int b = static_cast<int>(rng.next_below(tree.num_vertices()));
    double expected = depth(a) + depth(b) - 2 * depth(lca(a, b));
    CHECK(m(a, b) == expected);
  }
}
