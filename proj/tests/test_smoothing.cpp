#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hypcone/error.hpp"
#include "hypcone/smoothing.hpp"
#include "oracles.hpp"

using namespace hypcone;

namespace {

const SmoothingProfile& standard() {
  static const SmoothingProfile p = SmoothingProfile::standard(0.1);
  return p;
}

// Continuous but kinked at ε: φ ≡ 1, ψ = δ below ε.
SmoothingProfile kinked(double eps) {
  return SmoothingProfile(eps, [](double d) { return SmoothingProfile::Values{1.0, 0.0, d, 1.0, 0.0}; });
}

double max_abs_diff(const SectionalCurvatures& a, const SectionalCurvatures& b) {
  return std::max({std::abs(a.k12 - b.k12), std::abs(a.k13 - b.k13), std::abs(a.k23 - b.k23)});
}

}  // namespace

TEST_SUITE("smoothing") {
  TEST_CASE("profile matches the hyperbolic metric from epsilon on") {
    const auto& p = standard();
    for (double d : {0.1, 0.2, 1.0, 3.0}) {
      const auto v = p(d);
      CHECK(v.phi == 1.0);
      CHECK(v.dphi == 0.0);
      CHECK(v.psi == std::cosh(d));
      CHECK(v.dpsi == std::sinh(d));
    }
    // The inner branch meets the outer one continuously, with derivatives.
    const auto below = p(0.1 * (1 - 1e-9));
    CHECK(below.phi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(below.psi == doctest::Approx(std::cosh(0.1)).epsilon(1e-9));
    CHECK(below.dpsi == doctest::Approx(std::sinh(0.1)).epsilon(1e-8));
    CHECK(below.ddpsi == doctest::Approx(std::cosh(0.1)).epsilon(1e-8));
    CHECK_THROWS_AS(p(0.0), Error);
    CHECK_THROWS_AS(p(-1.0), Error);
    CHECK_THROWS_AS(SmoothingProfile::standard(0.0), Error);
  }

  TEST_CASE("profile asymptotics near the core") {
    const auto& p = standard();
    for (double d : {1e-9, 1e-7, 1e-5, 1e-3, 1e-2, 0.05, 0.09}) {
      const auto v = p(d);
      CHECK(v.phi > 0.0);
      CHECK(v.psi > 0.0);
      CHECK(d * v.phi > 0.09);
      CHECK(d * v.phi < 25.0);
      CHECK(v.psi / d < 25.0);
      CHECK(v.dphi <= 0.0);
      CHECK(v.dpsi > 0.0);
    }
    // φ ≈ a/δ with the constant fixed by ψ(ε) = cosh ε.
    CHECK(1e-8 * p(1e-8).phi == doctest::Approx(oracle::kSmoothingA).epsilon(1e-6));
  }

  TEST_CASE("christoffel table") {
    const auto& p = standard();
    const ConnectionTable t = christoffel(p, 1.0);
    CHECK(t.value[1][1] == doctest::Approx(-std::sinh(1.0) * std::cosh(1.0)).epsilon(1e-15));
    CHECK(t.direction[1][1] == 0);
    CHECK(t.value[0][1] == doctest::Approx(1.3130352855).epsilon(1e-10));
    CHECK(t.value[0][0] == 0.0);
    CHECK(t.direction[1][2] == -1);
    CHECK(t.direction[2][1] == -1);
    for (double d : {1e-4, 0.03, 0.07, 0.5}) {
      const ConnectionTable c = christoffel(p, d);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          CHECK(c.value[i][j] == c.value[j][i]);
          CHECK(c.direction[i][j] == c.direction[j][i]);
        }
    }
    CHECK_THROWS_AS(christoffel(p, 0.0), Error);
  }

  TEST_CASE("christoffel table agrees with finite differences of the metric") {
    const auto& p = standard();
    for (double d : {0.01, 0.05, 0.08, 0.3}) {
      const auto exact = christoffel(p, d).christoffel_symbols();
      const auto fd = curvature_oracle(metric_of(p), d, std::min(1e-4, d / 100)).christoffel_symbols;
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) CHECK(std::abs(exact[k][i][j] - fd[k][i][j]) < 1e-7 * std::max(1.0, std::abs(exact[k][i][j])));
    }
  }

  TEST_CASE("curvatures in the unmodified region are -1") {
    const auto& p = standard();
    for (double d : {0.1, 0.15, 1.0, 5.0}) {
      const auto k = sectional_curvatures(p, d);
      CHECK(std::abs(k.k12 + 1.0) < 1e-12);
      CHECK(std::abs(k.k13 + 1.0) < 1e-12);
      CHECK(std::abs(k.k23 + 1.0) < 1e-12);
    }
    const auto o = curvature_oracle(metric_of(p), 1.0, 1e-4);
    CHECK(max_abs_diff(o.curvatures, {-1, -1, -1}) < 1e-7);
    CHECK_FALSE(o.warning.has_value());
  }

  TEST_CASE("curvatures are negative inside") {
    const auto k = sectional_curvatures(standard(), 0.05);
    CHECK(k.k12 < 0.0);
    CHECK(k.k13 < 0.0);
    CHECK(k.k23 < 0.0);
  }

  TEST_CASE("closed form agrees with the finite-difference oracle") {
    const auto& p = standard();
    const DiagonalMetric g = metric_of(p);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-6.0, 0.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double d = 0.1 * std::pow(10.0, u(rng));
      const auto o = curvature_oracle(g, d, std::min(1e-4, d / 100));
      worst = std::max(worst, max_abs_diff(o.curvatures, sectional_curvatures(p, d)));
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("oracle on a flat cone") {
    const DiagonalMetric cone{[](double) { return 1.0; }, [](double d) { return d * d; }, [](double) { return 1.0; }};
    for (double d : {0.5, 1.0, 2.0}) {
      const auto o = curvature_oracle(cone, d, 1e-3);
      CHECK(std::abs(o.curvatures.k12) < 1e-9);
      CHECK(std::abs(o.curvatures.k13) < 1e-9);
      CHECK(std::abs(o.curvatures.k23) < 1e-9);
    }
  }

  TEST_CASE("oracle preconditions") {
    const DiagonalMetric g = metric_of(standard());
    CHECK_THROWS_AS(curvature_oracle(g, 1e-4, 1e-4), Error);
    CHECK_THROWS_AS(curvature_oracle(g, 1.0, 0.0), Error);
    CHECK(curvature_oracle(g, 0.5, 0.05).warning.has_value());
    CHECK_FALSE(curvature_oracle(g, 0.5, 0.01).warning.has_value());
  }

  TEST_CASE("negativity check of the default profile") {
    const CurvatureReport r = negativity_check(standard(), 1000);
    REQUIRE(r.grid.size() == 1000);
    CHECK(std::is_sorted(r.grid.begin(), r.grid.end()));
    CHECK(std::adjacent_find(r.grid.begin(), r.grid.end()) == r.grid.end());
    CHECK(r.grid.front() == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(r.grid.back() == 0.1);
    CHECK(r.max < 0.0);
    CHECK(r.oracle_consistent);
    CHECK(r.oracle_max_deviation < 1e-6);
    // Near the core K12 tends to −1/a².
    CHECK(r.max == doctest::Approx(-1.0 / (oracle::kSmoothingA * oracle::kSmoothingA)).epsilon(1e-5));
    // No complete metric of this shape does better than −tanh²ε.
    CHECK(r.max >= -std::pow(std::tanh(0.1), 2));
    CHECK(r.volume_integral > 0.0);
    CHECK(std::isfinite(r.volume_integral));
  }

  TEST_CASE("a kinked profile is flagged by the oracle") {
    const CurvatureReport r = negativity_check(kinked(0.1), 200);
    CHECK_FALSE(r.oracle_consistent);
    CHECK(r.oracle_max_deviation > 1.0);
    CHECK(r.oracle_worst_delta > 0.09);
  }

  TEST_CASE("checks outside the modified region are exactly hyperbolic") {
    const CurvatureReport r = negativity_check(standard(), 50, 0.1, 0.2);
    for (std::size_t k = 0; k < r.grid.size(); ++k) {
      CHECK(std::abs(r.k12[k] + 1.0) < 1e-12);
      CHECK(std::abs(r.k13[k] + 1.0) < 1e-12);
      CHECK(std::abs(r.k23[k] + 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(negativity_check(standard(), 1), Error);
    CHECK_THROWS_AS(negativity_check(standard(), 10, 0.2, 0.1), Error);
  }

  TEST_CASE("the modified metric is complete") {
    const auto& p = standard();
    std::vector<double> dist;
    for (int k = 3; k <= 12; ++k) dist.push_back(radial_distance(p, std::pow(10.0, -k)));
    for (std::size_t k = 1; k < dist.size(); ++k) {
      // Each decade adds about a·ln 10.
      CHECK(dist[k] - dist[k - 1] == doctest::Approx(oracle::kSmoothingA * std::log(10.0)).epsilon(1e-6));
    }
    CHECK(radial_distance(p, 0.1) == 0.0);
    CHECK(radial_distance(p, 0.3) == doctest::Approx(-0.2));
    const double ref = oracle::tanh_sinh([&](double d) { return p(d).phi; }, 1e-3, 0.1, 1e-12);
    CHECK(radial_distance(p, 1e-3) == doctest::Approx(ref).epsilon(1e-10));
  }

  TEST_CASE("other blending radii") {
    for (double eps : {0.05, 0.3}) {
      const SmoothingProfile p = SmoothingProfile::standard(eps);
      const CurvatureReport r = negativity_check(p, 200);
      CHECK(r.max < 0.0);
      CHECK(r.oracle_consistent);
    }
  }
}
