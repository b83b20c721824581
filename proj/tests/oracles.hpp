#pragma once

// Independent reference computations used only by the tests.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

// High-precision reference values (50-digit mpmath runs).
inline constexpr double kFigureEightVolume = 2.02988321281930725004;        // 6Λ(π/3)
inline constexpr double kVolumeAtHalfPi = 0.507470803204826812510601277138;  // 6Λ(π/3) − ∫₀^{π/2} arccosh(1+cos t−cos 2t)
inline constexpr double kLengthAtHalfPi = 2.63391579384963341725;            // 2 arccosh 2
inline constexpr double kSmoothingA = 20.026016;                             // profile constant at ε = 0.1

/// Double-exponential quadrature, a method unrelated to Gauss–Kronrod.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate([&f](double t) { return f(t); }, a, b, tol);
}

/// Λ(x) = −∫₀ˣ log|2 sin t| dt directly from the definition, for x ∈ [0, π].
inline double lobachevsky_by_quadrature(double x) {
  if (x == 0.0) return 0.0;
  return -tanh_sinh([](double t) { return std::log(std::abs(2.0 * std::sin(t))); }, 0.0, x);
}

inline double figure_eight_arccosh(double t) {
  const double x = 1.0 + std::cos(t) - std::cos(2.0 * t);
  return x > 1.0 ? std::acosh(x) : 0.0;
}

using Matrix = std::vector<std::vector<double>>;

/// The five conditions transcribed directly, relation given as a bitmask over
/// the |X|·|Y| pairs (pair index = i·|Y| + j).
inline bool literal_eps_approximation(std::uint32_t rel, const Matrix& dx, int x0, const Matrix& dy, int y0,
                                      double eps) {
  const int nx = static_cast<int>(dx.size()), ny = static_cast<int>(dy.size());
  auto related = [&](int i, int j) { return (rel >> (i * ny + j)) & 1u; };
  auto in_bx = [&](int i) { return dx[x0][i] < 1.0 / eps; };
  auto in_by = [&](int j) { return dy[y0][j] < 1.0 / eps; };

  bool c1 = false;
  for (int j = 0; j < ny; ++j) c1 = c1 || (related(x0, j) && dy[y0][j] < eps);
  bool c2 = false;
  for (int i = 0; i < nx; ++i) c2 = c2 || (related(i, y0) && dx[x0][i] < eps);
  if (!c1 || !c2) return false;
  for (int i = 0; i < nx; ++i) {
    if (!in_bx(i)) continue;
    bool hit = false;
    for (int j = 0; j < ny; ++j) hit = hit || (related(i, j) && in_by(j));
    if (!hit) return false;
  }
  for (int j = 0; j < ny; ++j) {
    if (!in_by(j)) continue;
    bool hit = false;
    for (int i = 0; i < nx; ++i) hit = hit || (related(i, j) && in_bx(i));
    if (!hit) return false;
  }
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      if (!related(i, j) || !in_bx(i) || !in_by(j)) continue;
      for (int k = 0; k < nx; ++k)
        for (int l = 0; l < ny; ++l) {
          if (!related(k, l) || !in_bx(k) || !in_by(l)) continue;
          if (!(std::abs(dx[i][k] - dy[j][l]) < eps)) return false;
        }
    }
  return true;
}

inline bool exists_by_enumeration(const Matrix& dx, int x0, const Matrix& dy, int y0, double eps) {
  const int pairs = static_cast<int>(dx.size() * dy.size());
  for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << pairs); ++rel)
    if (literal_eps_approximation(static_cast<std::uint32_t>(rel), dx, x0, dy, y0, eps)) return true;
  return false;
}

struct Infimum {
  double eps;
  bool attained;
};

/// Infimum of admissible ε by enumerating every relation at every value where
/// a comparison in the definition can flip, and at the gaps between them.
inline Infimum min_eps_by_enumeration(const Matrix& dx, int x0, const Matrix& dy, int y0) {
  std::set<double> cuts;
  for (const Matrix* m : {&dx, &dy})
    for (const auto& row : *m)
      for (double d : row)
        if (d > 0) {
          cuts.insert(d);
          cuts.insert(1.0 / d);
        }
  for (const auto& r : dx)
    for (double a : r)
      for (const auto& s : dy)
        for (double b : s)
          if (a != b) cuts.insert(std::abs(a - b));
  std::vector<double> c(cuts.begin(), cuts.end());
  if (c.empty() || exists_by_enumeration(dx, x0, dy, y0, c[0] / 2)) return {0.0, false};
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (exists_by_enumeration(dx, x0, dy, y0, c[k])) return {c[k], true};
    const double gap = k + 1 < c.size() ? 0.5 * (c[k] + c[k + 1]) : 2 * c[k];
    if (exists_by_enumeration(dx, x0, dy, y0, gap)) return {c[k], false};
  }
  return {std::numeric_limits<double>::infinity(), false};
}

/// Fewest eps-balls (centres among all points) covering B_R(x0), by trying
/// every subset of centres in order of size.
inline int cover_by_enumeration(const Matrix& d, int x0, double radius, double eps) {
  const int n = static_cast<int>(d.size());
  std::vector<int> ball;
  for (int i = 0; i < n; ++i)
    if (d[x0][i] < radius) ball.push_back(i);
  int best = n + 1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const int size = __builtin_popcount(s);
    if (size >= best) continue;
    bool ok = true;
    for (int p : ball) {
      bool hit = false;
      for (int c = 0; c < n && !hit; ++c) hit = ((s >> c) & 1u) && d[c][p] < eps;
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return best;
}

/// Shortest nonzero vector m·a + n·b with |m|, |n| ≤ 20.
inline double systole_by_search(std::complex<double> a, std::complex<double> b) {
  double best = std::numeric_limits<double>::infinity();
  for (int m = -20; m <= 20; ++m)
    for (int n = -20; n <= 20; ++n)
      if (m || n) best = std::min(best, std::abs(static_cast<double>(m) * a + static_cast<double>(n) * b));
  return best;
}

}  // namespace oracle
