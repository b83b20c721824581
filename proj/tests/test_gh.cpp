#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hypcone/error.hpp"
#include "hypcone/gh.hpp"
#include "oracles.hpp"

using namespace hypcone;

namespace {

using Space = FinitePointedMetricSpace;

Space line(std::vector<double> xs, int base = 0) {
  std::vector<std::vector<double>> d(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = std::abs(xs[i] - xs[j]);
  return Space(d, base);
}

// Distinct integer points in the plane with the L1 metric; ties are common.
Space random_grid_space(std::mt19937_64& rng, int n, int side) {
  std::uniform_int_distribution<int> c(0, side);
  std::vector<std::pair<int, int>> pts;
  while (static_cast<int>(pts.size()) < n) {
    std::pair<int, int> p{c(rng), c(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = std::abs(pts[i].first - pts[j].first) + std::abs(pts[i].second - pts[j].second);
  return Space(d, std::uniform_int_distribution<int>(0, n - 1)(rng));
}

std::uint32_t mask_of(const Relation& r, int ny) {
  std::uint32_t m = 0;
  for (auto [i, j] : r) m |= 1u << (i * ny + j);
  return m;
}

Relation identity(int n) {
  Relation r;
  for (int i = 0; i < n; ++i) r.emplace_back(i, i);
  return r;
}

Relation all_pairs(int nx, int ny) {
  Relation r;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) r.emplace_back(i, j);
  return r;
}

}  // namespace

TEST_SUITE("gh") {
  TEST_CASE("space validation") {
    CHECK_THROWS_AS(Space({{0, 1}, {2, 0}}), Error);
    CHECK_THROWS_AS(Space({{0, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(Space({{0, 0}, {0, 0}}), Error);
    CHECK_THROWS_AS(Space({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), Error);
    CHECK_THROWS_AS(Space({{0, 1}}), Error);
    CHECK_THROWS_AS(Space({}), Error);
    CHECK_THROWS_AS(Space({{0, 1}, {1, 0}}, 2), Error);
    CHECK_THROWS_AS(Space({"a"}, {{0, 1}, {1, 0}}), Error);
    try {
      Space({{0, -1}, {-1, 0}});
    } catch (const Error& e) {
      CHECK(e.field() == "matrix");
    }
    const Space s({"p", "q"}, {{0, 2}, {2, 0}}, 1);
    CHECK(s.labels()[1] == "q");
    CHECK(s.scaled(1.5)(0, 1) == 3.0);
    CHECK_THROWS_AS(s.scaled(0.0), Error);
    const Space p = line({0, 1, 3}, 1).permuted({2, 0, 1});
    CHECK(p(0, 1) == 3.0);
    CHECK(p(1, 2) == 1.0);
    CHECK(p.basepoint() == 2);
  }

  TEST_CASE("identity relation") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
      const Space x = random_grid_space(rng, 5, 4);
      for (double eps : {1e-6, 0.3, 2.0, 50.0}) CHECK(is_eps_approximation(identity(5), x, x, eps).ok);
    }
  }

  TEST_CASE("two points against one") {
    const Space x = line({0, 1}), y = line({0});
    const ApproximationVerdict v = is_eps_approximation(all_pairs(2, 1), x, y, 0.5);
    CHECK_FALSE(v.ok);
    CHECK(v.condition == 5);
    REQUIRE(v.witness.size() == 4);
    CHECK(std::abs(x(v.witness[0], v.witness[2]) - y(v.witness[1], v.witness[3])) == 1.0);
    CHECK_FALSE(oracle::literal_eps_approximation(0b11, x.matrix(), 0, y.matrix(), 0, 0.5));

    CHECK(is_eps_approximation(all_pairs(2, 1), x, y, 1.2).ok);
    CHECK(oracle::exists_by_enumeration(x.matrix(), 0, y.matrix(), 0, 1.2));
    const MinEpsResult m = min_eps(x, y);
    const oracle::Infimum o = oracle::min_eps_by_enumeration(x.matrix(), 0, y.matrix(), 0);
    CHECK(m.eps == 1.0);
    CHECK(m.attained);
    CHECK(m.exact);
    CHECK(o.eps == 1.0);
    CHECK(o.attained);
    CHECK(is_eps_approximation(m.relation, x, y, m.eps).ok);
  }

  TEST_CASE("verdicts match the literal definition") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> nx(1, 3), ny(1, 3);
    std::uniform_real_distribution<double> e(0.05, 2.5);
    std::vector<double> nice = {0.25, 0.5, 1.0, 1.0 / 3.0, 2.0};
    for (int trial = 0; trial < 400; ++trial) {
      const Space x = random_grid_space(rng, nx(rng), 3), y = random_grid_space(rng, ny(rng), 3);
      const int pairs = x.size() * y.size();
      const std::uint32_t mask = std::uniform_int_distribution<std::uint32_t>(0, (1u << pairs) - 1)(rng);
      Relation r;
      for (int p = 0; p < pairs; ++p)
        if ((mask >> p) & 1u) r.emplace_back(p / y.size(), p % y.size());
      const double eps = trial % 2 ? e(rng) : nice[trial / 2 % nice.size()];
      const bool lit = oracle::literal_eps_approximation(mask, x.matrix(), x.basepoint(), y.matrix(), y.basepoint(), eps);
      const ApproximationVerdict v = is_eps_approximation(r, x, y, eps);
      REQUIRE(v.ok == lit);
      CHECK(is_eps_approximation(transpose(r), y, x, eps).ok == lit);
    }
  }

  TEST_CASE("relations outside the range are rejected") {
    const Space x = line({0, 1}), y = line({0});
    CHECK_THROWS_AS(is_eps_approximation({{2, 0}}, x, y, 1.0), Error);
    CHECK_THROWS_AS(is_eps_approximation({{0, 0}}, x, y, 0.0), Error);
  }

  TEST_CASE("minimal eps agrees with brute force") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> n(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
      const Space x = random_grid_space(rng, n(rng), 3), y = random_grid_space(rng, n(rng), 3);
      const MinEpsResult m = min_eps(x, y);
      const oracle::Infimum o = oracle::min_eps_by_enumeration(x.matrix(), x.basepoint(), y.matrix(), y.basepoint());
      REQUIRE(m.eps == doctest::Approx(o.eps).epsilon(1e-12));
      CHECK(m.attained == o.attained);
      if (m.attained) {
        CHECK(is_eps_approximation(m.relation, x, y, m.eps).ok);
        CHECK(oracle::literal_eps_approximation(mask_of(m.relation, y.size()), x.matrix(), x.basepoint(), y.matrix(),
                                                y.basepoint(), m.eps));
      }
      // Symmetric under swapping the spaces.
      const MinEpsResult back = min_eps(y, x);
      CHECK(back.eps == m.eps);
      CHECK(back.attained == m.attained);
    }
  }

  TEST_CASE("permuting points does not change the minimal eps") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const Space x = random_grid_space(rng, 4, 4), y = random_grid_space(rng, 4, 4);
      std::vector<int> perm(4);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const MinEpsResult a = min_eps(x, y), b = min_eps(x.permuted(perm), y);
      CHECK(a.eps == b.eps);
      CHECK(a.attained == b.attained);
    }
  }

  TEST_CASE("find_eps_approximation") {
    const Space x = line({0, 1}), y = line({0});
    CHECK_FALSE(find_eps_approximation(x, y, 0.9).has_value());
    const auto r = find_eps_approximation(x, y, 1.0);
    REQUIRE(r.has_value());
    CHECK(is_eps_approximation(*r, x, y, 1.0).ok);
  }

  TEST_CASE("equal spaces have infimum zero") {
    const Space x = line({0, 1, 2.5, 4});
    const MinEpsResult m = min_eps(x, x);
    CHECK(m.eps == 0.0);
    CHECK_FALSE(m.attained);
  }

  TEST_CASE("not scale invariant") {
    const Space x = line({0, 1}), y = line({0});
    CHECK(min_eps(x, y).eps == 1.0);
    CHECK(min_eps(x.scaled(2.0), y).eps == 0.5);
  }

  TEST_CASE("heuristic mode is an upper bound") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const Space x = random_grid_space(rng, 4, 4), y = random_grid_space(rng, 4, 4);
      const MinEpsResult h = min_eps(x, y, SearchMode::Heuristic);
      CHECK_FALSE(h.exact);
      CHECK(h.eps >= min_eps(x, y).eps);
    }
    const Space big = line({0, 1, 2, 3, 4});
    CHECK_THROWS_AS(min_eps(big, big), Error);
    CHECK_NOTHROW(min_eps(big, big, SearchMode::Heuristic));
    CHECK_THROWS_AS(find_eps_approximation(big, big, 1.0), Error);
  }

  TEST_CASE("covering numbers") {
    const Space pts = line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const CoverResult c = covering_number(pts, 10.5, 1.0);
    CHECK(c.count == oracle::cover_by_enumeration(pts.matrix(), 0, 10.5, 1.0));
    CHECK(c.count == 11);
    CHECK(c.exact);
    CHECK(covering_number(pts, 10.5, 1.5).count == 4);
    CHECK(covering_number(pts, 10.5, 10.0 + 1e-9).count == 1);
    CHECK(covering_number(pts, 10.5, 11.0).count == 1);
    CHECK(covering_number(pts, 0.5, 0.1).count == 1);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
      const Space x = random_grid_space(rng, 9, 4);
      std::uniform_real_distribution<double> r(0.5, 6.0);
      const double radius = r(rng);
      int previous = 0;
      for (double eps : {5.0, 3.0, 2.0, 1.5, 1.0, 0.5}) {
        const CoverResult cr = covering_number(x, radius, eps);
        CHECK(cr.count == oracle::cover_by_enumeration(x.matrix(), x.basepoint(), radius, eps));
        CHECK(cr.count >= previous);
        previous = cr.count;
        for (int p = 0; p < x.size(); ++p) {
          if (!(x(x.basepoint(), p) < radius)) continue;
          CHECK(std::any_of(cr.centers.begin(), cr.centers.end(), [&](int c) { return x(c, p) < eps; }));
        }
        const CoverResult g = covering_number(x, radius, eps, SearchMode::Heuristic);
        CHECK_FALSE(g.exact);
        CHECK(g.count >= cr.count);
      }
    }
    CHECK_THROWS_AS(covering_number(pts, 0.0, 1.0), Error);
    CHECK_THROWS_AS(covering_number(pts, 1.0, -1.0), Error);
  }

  TEST_CASE("large balls fall back to greedy covers") {
    std::vector<double> xs(40);
    std::iota(xs.begin(), xs.end(), 0.0);
    const CoverResult c = covering_number(line(xs), 100.0, 1.5);
    CHECK_FALSE(c.exact);
    CHECK(c.count >= 14);
  }

  TEST_CASE("tube boundary samples") {
    // Meridian θ sinh δ = 3 and longitude σ cosh δ = 4.
    const Tube t(4.0 / std::cosh(1.0), 1.0, 3.0 / std::sinh(1.0));
    const Space s = sample_tube_boundary(t, 2, 2);
    REQUIRE(s.size() == 4);
    CHECK(s.basepoint() == 0);
    CHECK(s.labels()[0] == "0,0");
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) {
          lo = std::min(lo, s(i, j));
          hi = std::max(hi, s(i, j));
        }
    CHECK(lo == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(hi == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_THROWS_AS(sample_tube_boundary(t, 0, 2), Error);
  }

  TEST_CASE("the angle-pinch family has a constant boundary torus") {
    for (int i = 1; i < 6; ++i) {
      const Space a = sample_tube_boundary(cusp_opening_family(CuspOpening::AnglePinch, i), 2, 2);
      const Space b = sample_tube_boundary(cusp_opening_family(CuspOpening::AnglePinch, i + 1), 2, 2);
      const MinEpsResult m = min_eps(a, b);
      // Recomputed distances agree only to rounding.
      CHECK(m.eps < 1e-12);
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) CHECK(a(p, q) == doctest::Approx(b(p, q)).epsilon(1e-12));
    }
  }
}
