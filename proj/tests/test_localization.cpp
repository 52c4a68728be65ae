// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "hgw/graph.hpp"
#include "hgw/localization.hpp"
#include "oracles.hpp"

using hgw::BoundTarget;
using hgw::Error;
using hgw::errc;
using hgw::Graph;
namespace frozen = oracles::frozen;

TEST_CASE("zeta rate function") {
  SUBCASE("pinned values") {
    CHECK(hgw::zeta(1.0, 1.0, 1.0) ==
          doctest::Approx(frozen::zeta_1_1_1).epsilon(1e-14));
    CHECK(hgw::zeta(1.0, 1.0, 2.0) ==
          doctest::Approx(frozen::zeta_1_1_2).epsilon(1e-14));
  }
  SUBCASE("zero distance is exactly zero") {
    for (double s : {1e-6, 0.3, 2.0})
      for (double t : {1e-3, 1.0, 50.0}) CHECK(hgw::zeta(s, t, 0.0) == 0.0);
  }
  SUBCASE("small jump sizes reach the Gaussian limit without cancellation") {
    // naive evaluation of (r s asinh(rs/t) - sqrt(t²+r²s²) + t)/s² loses
    // ~12 digits here; the pinned value has full precision
    CHECK(hgw::zeta(1e-6, 1.0, 1.0) ==
          doctest::Approx(frozen::zeta_1em6_1_1).epsilon(1e-12));
    CHECK(hgw::zeta(1e-6, 1.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-6));  // r²/(2t)
  }
  SUBCASE("nonnegative and nondecreasing in distance") {
    for (double s : {0.2, 1.0, 3.0})
      for (double t : {0.05, 1.0, 8.0}) {
        double prev = hgw::zeta(s, t, 0.0);
        CHECK(prev >= 0.0);
        for (double r = 0.5; r <= 5.0; r += 0.5) {
          double cur = hgw::zeta(s, t, r);
          CHECK(cur >= prev);
          prev = cur;
        }
      }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS((void)hgw::zeta(0.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS((void)hgw::zeta(1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS((void)hgw::zeta(1.0, -1.0, 1.0), Error);
    CHECK_THROWS_AS((void)hgw::zeta(1.0, 1.0, -0.1), Error);
  }
}

TEST_CASE("zeta time derivative") {
  SUBCASE("pinned value (1 - sqrt 2)") {
    CHECK(hgw::zeta_dt(1.0, 1.0, 1.0) ==
          doctest::Approx(frozen::zeta_dt_1_1_1).epsilon(1e-14));
  }
  SUBCASE("zero at zero distance, never positive") {
    CHECK(hgw::zeta_dt(0.7, 2.0, 0.0) == 0.0);
    for (double s : {0.2, 1.0, 3.0})
      for (double t : {0.05, 1.0, 8.0})
        for (double r : {0.1, 1.0, 4.0}) CHECK(hgw::zeta_dt(s, t, r) <= 0.0);
  }
  SUBCASE("matches central finite differences of zeta") {
    for (double s : {0.3, 1.0, 2.5})
      for (double t : {0.1, 1.0, 6.0})
        for (double r : {0.25, 1.0, 3.0}) {
          const double h = 1e-6 * t;
          const double fd =
              (hgw::zeta(s, t + h, r) - hgw::zeta(s, t - h, r)) / (2.0 * h);
          const double an = hgw::zeta_dt(s, t, r);
          CHECK(an == doctest::Approx(fd).epsilon(1e-6));
        }
  }
}

TEST_CASE("heat bound") {
  CHECK(hgw::heat_bound(1.0, 1.0, 0.0) == 1.0);
  CHECK(hgw::heat_bound(1.0, 1.0, 1.0) ==
        doctest::Approx(frozen::heat_bound_1_1_1).epsilon(1e-14));
  CHECK(hgw::heat_bound(1.0, 1.0, 2.0) ==
        doctest::Approx(frozen::heat_bound_1_1_2).epsilon(1e-14));
  double prev = hgw::heat_bound(1.0, 1.0, 0.0);
  for (double r = 0.5; r <= 5.0; r += 0.5) {
    const double cur = hgw::heat_bound(1.0, 1.0, r);
    CHECK(cur < prev);
    CHECK(cur > 0.0);
    prev = cur;
  }
}

TEST_CASE("pair constant") {
  SUBCASE("single edge and diagonal are exactly one") {
    auto d = hgw::eigendecompose(hgw::laplacian(hgw::parse_edge_list("a b 1")));
    CHECK(hgw::pair_constant(d, 0, 1) == 1.0);
    CHECK(hgw::pair_constant(d, 0, 0) == 1.0);
  }
  SUBCASE("never below one, never above it by more than round-off") {
    // sum_k |phi_k(x) phi_k(y)| <= 1 by Cauchy-Schwarz between the
    // orthonormal rows, so the clamp at 1 is the whole story.
    auto d = hgw::eigendecompose(
        hgw::laplacian(oracles::random_connected_graph(20, 50)));
    for (int x = 0; x < 20; ++x)
      for (int y = 0; y < 20; ++y) {
        const double c = hgw::pair_constant(d, x, y);
        CHECK(c >= 1.0);
        CHECK(c <= 1.0 + 1e-12);
      }
  }
}

TEST_CASE("wavelet decay bounds") {
  SUBCASE("pinned value of the pass/fail form") {
    CHECK(hgw::wavelet_bound(1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(frozen::wavelet_bound_1_1_1_1).epsilon(1e-14));
  }
  SUBCASE("zero distance collapses to the pair constant") {
    CHECK(hgw::wavelet_bound(2.0, 0.0, 1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hgw::wavelet_bound(0.5, 0.0, 1.0, 1.25) ==
          doctest::Approx(1.25).epsilon(1e-15));
  }
  SUBCASE("always positive on a grid") {
    for (double t : {0.05, 1.0, 9.0})
      for (double r : {0.0, 0.5, 2.0, 10.0})
        for (double s : {0.1, 1.0, 2.0})
          CHECK(hgw::wavelet_bound(t, r, s, 1.0) > 0.0);
  }
  SUBCASE("pinned value of the bracket form") {
    CHECK(hgw::wavelet_bound_bracket(1.0, 2.0, 1.0, 1.0) ==
          doctest::Approx(frozen::bracket_1_2_1_1).epsilon(1e-13));
  }
  SUBCASE("bracket at zero distance is c/t - 2") {
    CHECK(hgw::wavelet_bound_bracket(1.0, 0.0, 1.0, 1.0) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(hgw::wavelet_bound_bracket(0.25, 0.0, 1.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("bracket form is continuous in r") {
    double prev = hgw::wavelet_bound_bracket(1.5, 0.0, 0.8, 1.0);
    for (double r = 0.02; r <= 6.0; r += 0.02) {
      const double cur = hgw::wavelet_bound_bracket(1.5, r, 0.8, 1.0);
      CHECK(std::abs(cur - prev) <= 0.05);  // grid-consistent Lipschitz cap
      prev = cur;
    }
  }
}

TEST_CASE("default time grid") {
  auto d = hgw::eigendecompose(hgw::laplacian(oracles::path_graph(6)));
  auto grid = hgw::default_time_grid(d);
  REQUIRE(grid.size() == 40);
  CHECK(grid.front() == doctest::Approx(0.01 / d.lambda_max()).epsilon(1e-14));
  CHECK(grid.back() == doctest::Approx(10.0 / d.lambda_1()).epsilon(1e-14));
  // log spacing: constant ratio between consecutive points
  const double ratio = grid[1] / grid[0];
  for (std::size_t i = 2; i < grid.size(); ++i)
    CHECK(grid[i] / grid[i - 1] == doctest::Approx(ratio).epsilon(1e-10));
}

TEST_CASE("localization sweeps") {
  SUBCASE("three-vertex path: the heat bound holds everywhere") {
    Graph g = oracles::path_graph(3);
    auto report =
        hgw::verify_localization(g, hgw::intrinsic_metric(g), BoundTarget::heat);
    CHECK(report.violations.empty());
    CHECK(report.metric_intrinsic);
    CHECK(report.max_ratio <= 1.0 + 1e-9);
    CHECK(report.samples.size() == 40 * 3);
  }
  SUBCASE("complete graph: the heat bound holds in the dense regime") {
    Graph g = oracles::complete_graph(5);
    auto report =
        hgw::verify_localization(g, hgw::intrinsic_metric(g), BoundTarget::heat);
    CHECK(report.violations.empty());
  }
  SUBCASE("wavelet target: the decay bound holds and brackets are tracked") {
    Graph g = oracles::path_graph(5);
    auto report = hgw::verify_localization(g, hgw::intrinsic_metric(g),
                                           BoundTarget::wavelet);
    CHECK(report.violations.empty());
    // the bracket form is informational: it may be vacuous or even
    // exceeded, but the bookkeeping has to add up
    CHECK(report.bracket_vacuous_count >= 0);
    CHECK(report.bracket_violation_count >= 0);
    CHECK(report.bracket_vacuous_count + report.bracket_violation_count <=
          static_cast<long>(report.samples.size()));
    if (report.bracket_vacuous_count <
        static_cast<long>(report.samples.size()))
      CHECK(report.bracket_ratio_max > 0.0);
  }
  SUBCASE("every sample has positive distance and finite ratio") {
    Graph g = oracles::random_connected_graph(9, 51);
    auto report = hgw::verify_localization(g, hgw::intrinsic_metric(g),
                                           BoundTarget::wavelet);
    for (const auto& sample : report.samples) {
      CHECK(sample.r > 0.0);
      CHECK(std::isfinite(sample.ratio));
      CHECK(sample.x < sample.y);
    }
  }
  SUBCASE("a deliberately inflated metric is caught") {
    // Tripling all distances (and shrinking the jump) tightens e^{-zeta}
    // far below the actual kernel: the checker must flag violations.
    Graph g = oracles::path_graph(4);
    hgw::IntrinsicMetric m = hgw::intrinsic_metric(g);
    m.dist *= 3.0;
    m.edge_length *= 0.25;
    m.jump_size *= 0.25;
    auto report = hgw::verify_localization(g, m, BoundTarget::heat);
    CHECK_FALSE(report.violations.empty());
  }
  SUBCASE("pair sampling beyond the exhaustive cutoff is deterministic") {
    Graph g = oracles::random_connected_graph(30, 52);
    hgw::LocalizationOptions opts;
    opts.max_exhaustive = 10;
    opts.sample_pairs = 50;
    auto d = hgw::eigendecompose(hgw::laplacian(g));
    auto grid = hgw::default_time_grid(d);
    auto m = hgw::intrinsic_metric(g);
    auto r1 =
        hgw::verify_localization(g, m, d, grid, BoundTarget::heat, opts);
    auto r2 =
        hgw::verify_localization(g, m, d, grid, BoundTarget::heat, opts);
    REQUIRE(r1.samples.size() == 40 * 50);
    REQUIRE(r1.samples.size() == r2.samples.size());
    for (std::size_t i = 0; i < r1.samples.size(); ++i) {
      CHECK(r1.samples[i].x == r2.samples[i].x);
      CHECK(r1.samples[i].y == r2.samples[i].y);
      CHECK(r1.samples[i].actual == r2.samples[i].actual);
    }
    CHECK(r1.violations.empty());
  }
  SUBCASE("disconnected input refuses") {
    Graph g = hgw::parse_edge_list("a b 1\nc d 1");
    hgw::IntrinsicMetric fake;  // never constructible for this graph
    fake.dist = Eigen::MatrixXd::Zero(4, 4);
    fake.edge_length = Eigen::MatrixXd::Zero(4, 4);
    fake.vertex_sums = Eigen::VectorXd::Zero(4);
    fake.jump_size = 1.0;
    auto d = hgw::eigendecompose(hgw::laplacian(g));
    try {
      (void)hgw::verify_localization(g, fake, d, {1.0}, BoundTarget::heat);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::disconnected_graph);
    }
  }
  SUBCASE("the non-intrinsic variant is reported, not rejected") {
    Graph g = oracles::complete_graph(4);
    auto m =
        hgw::intrinsic_metric(g, hgw::MetricVariant::inverse_root_weight);
    auto report = hgw::verify_localization(g, m, BoundTarget::heat);
    CHECK_FALSE(report.metric_intrinsic);
    CHECK(report.metric_variant == hgw::MetricVariant::inverse_root_weight);
  }
}
