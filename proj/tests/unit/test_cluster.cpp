// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "boolperc/cluster.hpp"
#include "boolperc/errors.hpp"
#include "boolperc/specialfn.hpp"
#include "doctest.h"
#include "stat_oracles.hpp"

using namespace boolperc;
using namespace boolperc::testing;

namespace {

std::size_t linear_count(const std::vector<Point>& pts, const Point& q, double dist) {
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return squared_distance(p, q) < dist * dist; }));
}

double reach_frequency(const ExploreConfig& cfg, std::uint64_t seed, int n, bool naive) {
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng = make_stream(seed, i);
    hits += naive ? naive_reach_oracle(cfg, rng) : explore_cluster(cfg, rng).reached();
  }
  return static_cast<double>(hits) / n;
}

}  // namespace

TEST_SUITE("cluster") {
  TEST_CASE("config validation") {
    ExploreConfig c;
    CHECK_NOTHROW(c.validate());
    c.r = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.t = -0.1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.d = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.size_threshold = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK(to_string(OutcomeKind::ThresholdExceeded) == "threshold_exceeded");
  }

  TEST_CASE("grid: empty, tangent and self queries") {
    SpatialGrid g(2);
    CHECK_FALSE(g.any_within(Point{0.0, 0.0}, 2.0));
    g.insert(Point{0.0, 0.0});
    CHECK(g.any_within(Point{0.0, 0.0}, 2.0));
    // Exactly tangent grains (distance 2) do not overlap.
    CHECK_FALSE(g.any_within(Point{2.0, 0.0}, 2.0));
    CHECK(g.any_within(Point{1.9999999, 0.0}, 2.0));
    CHECK(g.neighbors_within(Point{-1.0, -1.0}, 2.0).size() == 1);
    CHECK(g.size() == 1);
    CHECK(g.key_dims() == 2);
    CHECK_THROWS_AS(g.any_within(Point{0.0, 0.0}, 2.5), InvalidArgument);
    CHECK_THROWS_AS(g.insert(Point{0.0}), InvalidArgument);
    CHECK_THROWS_AS(SpatialGrid(5, 2.0, 6), InvalidArgument);
    CHECK(SpatialGrid(11).key_dims() == 3);
  }

  TEST_CASE("grid agrees with a linear scan") {
    for (int d : {2, 5, 11}) {
      for (int key_dims : {1, std::min(d, 3), std::min(d, 5)}) {
        RngStream rng(99, d * 10 + key_dims);
        SpatialGrid g(d, 2.0, key_dims);
        std::vector<Point> pts;
        const double box = d <= 2 ? 20.0 : 6.0;
        for (int i = 0; i < 2000; ++i) {
          Point p(d);
          for (double& x : p) x = rng.uniform(-box, box);
          g.insert(p);
          pts.push_back(p);
        }
        for (int i = 0; i < 1000; ++i) {
          Point q(d);
          for (double& x : q) x = rng.uniform(-box, box);
          const double dist = rng.uniform(0.5, 2.0);
          const std::size_t want = linear_count(pts, q, dist);
          REQUIRE(g.neighbors_within(q, dist).size() == want);
          REQUIRE(g.any_within(q, dist) == (want > 0));
        }
      }
    }
  }

  TEST_CASE("explore: zero intensity yields the lone origin grain") {
    ExploreConfig cfg{.d = 3, .t = 0.0, .r = 5.0};
    RngStream rng(1, 0);
    const Outcome o = explore_cluster(cfg, rng);
    CHECK(o.kind == OutcomeKind::Finite);
    CHECK(o.cluster_size == 1);
    CHECK_FALSE(naive_reach_oracle(cfg, rng));
  }

  TEST_CASE("explore: deterministic for a fixed stream and grid layout") {
    ExploreConfig cfg{.d = 4, .t = 0.02, .r = 8.0};
    for (int i = 0; i < 200; ++i) {
      RngStream a = make_stream(5, i), b = make_stream(5, i);
      const Outcome x = explore_cluster(cfg, a);
      ExploreConfig other = cfg;
      other.grid_key_dims = 4;
      const Outcome y = explore_cluster(other, b);
      REQUIRE(x.kind == y.kind);
      REQUIRE(x.cluster_size == y.cluster_size);
    }
  }

  TEST_CASE("explore: dominated by the Galton-Watson progeny") {
    // Offspring mean m = t |B_2| = 0.2 pi; the tree has mean size 1 / (1 - m).
    ExploreConfig cfg{.d = 2, .t = 0.05, .r = 50.0};
    const int n = 20000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
      RngStream rng = make_stream(8, i);
      const Outcome o = explore_cluster(cfg, rng);
      REQUIRE(o.kind == OutcomeKind::Finite);
      sum += o.cluster_size;
      sum2 += static_cast<double>(o.cluster_size) * o.cluster_size;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    const double gw = 1.0 / (1.0 - 0.2 * std::numbers::pi);
    CHECK(mean > 1.0);
    CHECK(mean <= gw + 3 * se);
  }

  TEST_CASE("explore: threshold stops runaway clusters") {
    ExploreConfig cfg{.d = 2, .t = 1.0, .r = 1000.0, .size_threshold = 50};
    RngStream rng(4, 0);
    const Outcome o = explore_cluster(cfg, rng);
    CHECK(o.kind == OutcomeKind::ThresholdExceeded);
    CHECK(o.cluster_size > 50);
    CHECK(o.reached());
  }

  TEST_CASE("explore: saturated regime always reaches") {
    ExploreConfig cfg{.d = 2, .t = 100.0, .r = 1.5};
    CHECK(reach_frequency(cfg, 12, 1000, false) == 1.0);
    CHECK(reach_frequency(cfg, 12, 1000, true) == 1.0);
  }

  TEST_CASE("explore and naive oracle agree") {
    struct Case {
      int d;
      double t, r;
    };
    for (Case c : {Case{2, 0.35, 10.0}, Case{3, 0.1, 6.0}, Case{5, 0.012, 4.0}}) {
      ExploreConfig cfg{.d = c.d, .t = c.t, .r = c.r};
      const int n = 5000;
      const double a = reach_frequency(cfg, 21, n, false);
      const double b = reach_frequency(cfg, 22, n, true);
      CAPTURE(c.d);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(two_proportion_p_value(static_cast<std::uint64_t>(a * n), n, static_cast<std::uint64_t>(b * n), n) >
            0.001);
    }
  }

  TEST_CASE("reach frequency is nondecreasing in t") {
    double prev = 0.0;
    for (double t : {0.1, 0.2, 0.3, 0.35}) {
      ExploreConfig cfg{.d = 2, .t = t, .r = 10.0};
      const int n = 4000;
      const double p = reach_frequency(cfg, 31, n, false);
      CAPTURE(t);
      CHECK(p >= prev - 3 * std::sqrt(0.25 / n));
      prev = p;
    }
  }

  TEST_CASE("naive oracle refuses oversized windows") {
    ExploreConfig cfg{.d = 2, .t = 1.0, .r = 5000.0};
    RngStream rng(1, 0);
    CHECK_THROWS_AS(naive_reach_oracle(cfg, rng), InvalidArgument);
  }
}
