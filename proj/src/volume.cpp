#include "hypcone/volume.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "hypcone/error.hpp"
#include "hypcone/quadrature.hpp"

namespace hypcone {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kCollapse = 1e-12;
constexpr double kUnitCircle = 1e-10;

cd horner(const std::vector<cd>& c, cd x) {
  cd r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

cd horner_derivative(const std::vector<cd>& c, cd x) {
  cd r = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) r = r * x + static_cast<double>(k) * c[k];
  return r;
}

// Roots of Σ c_k x^k with c_0, c_n ≠ 0.
std::vector<cd> polynomial_roots(const std::vector<cd>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cd> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  if (n == 2) {
    const cd disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
    // Pick the sign that avoids cancellation; the other root from Vieta.
    const cd q = -0.5 * (c[1] + (std::real(std::conj(c[1]) * disc) >= 0.0 ? disc : -disc));
    roots.push_back(q / c[2]);
    roots.push_back(c[0] / q);
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -c[k] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (int k = 0; k < n; ++k) roots.push_back(solver.eigenvalues()[k]);
  // A couple of guarded Newton steps.
  for (cd& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cd d = horner_derivative(c, r);
      if (std::abs(d) == 0.0) break;
      const cd next = r - horner(c, r) / d;
      if (!(std::abs(horner(c, next)) < std::abs(horner(c, r)))) break;
      r = next;
    }
  }
  return roots;
}

std::array<double, 40> zeta_even() {
  std::array<double, 40> z{};
  z[1] = kPi * kPi / 6.0;
  z[2] = std::pow(kPi, 4) / 90.0;
  constexpr int N = 200;
  for (int k = 3; k < 40; ++k) {
    const double p = 2.0 * k;
    double s = 0.0;
    for (int n = N; n >= 1; --n) s += std::pow(static_cast<double>(n), -p);
    // Euler–Maclaurin tail beyond N.
    s += std::pow(static_cast<double>(N), 1.0 - p) / (p - 1.0) - 0.5 * std::pow(static_cast<double>(N), -p);
    z[k] = s;
  }
  return z;
}

// Cl₂(x) for |x| ≤ π.
double clausen_reduced(double x) {
  static const std::array<double, 40> zeta = zeta_even();
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  double sum = x - x * std::log(ax);
  const double r = x * x / (4.0 * kPi * kPi);
  double power = x;  // x^{2k+1} / (2π)^{2k}
  for (int k = 1; k < 40; ++k) {
    power *= r;
    const double term = zeta[k] * power / (k * (2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

APolynomial::APolynomial(std::vector<Monomial> terms) {
  std::map<std::pair<int, int>, long long> merged;
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0) throw Error(ErrorKind::InvalidInput, "exponents must be nonnegative", "terms");
    merged[{t.i, t.j}] += t.c;
  }
  bool has_l = false, has_const = false;
  for (const auto& [key, c] : merged) {
    if (c == 0) continue;
    terms_.push_back({key.first, key.second, c});
    (key.first > 0 ? has_l : has_const) = true;
  }
  if (!has_l || !has_const) {
    throw Error(ErrorKind::InvalidInput, "A-polynomial needs monomials with and without L", "terms");
  }
}

APolynomial APolynomial::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Monomial> terms;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Monomial m{};
    if (!(fields >> m.i)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected `i j c`", "apoly");
    }
    std::string rest;
    if (!(fields >> m.j >> m.c) || (fields >> rest)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected `i j c`", "apoly");
    }
    terms.push_back(m);
  }
  return APolynomial(std::move(terms));
}

APolynomial APolynomial::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path, "apoly");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

APolynomial APolynomial::figure_eight() {
  return APolynomial({{0, 4, -1}, {1, 8, 1}, {1, 6, -1}, {1, 4, -2}, {1, 2, -1}, {1, 0, 1}, {2, 4, -1}});
}

int APolynomial::l_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.i);
  return d;
}

std::vector<cd> APolynomial::substitute(cd m) const {
  std::vector<cd> c(l_degree() + 1, 0.0);
  for (const auto& t : terms_) c[t.i] += static_cast<double>(t.c) * std::pow(m, t.j);
  return c;
}

std::vector<cd> l_roots(const APolynomial& a, double theta) {
  const auto& terms = a.terms();
  if (std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return t.j == terms.front().j; })) {
    throw Error(ErrorKind::DegenerateSubstitution, "A-polynomial does not depend on M");
  }
  std::vector<cd> c = a.substitute(std::polar(1.0, theta / 2.0));
  double scale = 0.0;
  for (const cd& x : c) scale = std::max(scale, std::abs(x));
  if (std::abs(c.back()) <= kCollapse * scale || std::abs(c.front()) <= kCollapse * scale) {
    throw Error(ErrorKind::DegenerateSubstitution, "L-polynomial collapses in degree at this angle", "theta");
  }
  return polynomial_roots(c);
}

CoreLength core_length_from_apoly(const APolynomial& a, double theta, std::optional<cd> seed,
                                  bool require_loxodromic) {
  if (!(theta > 0.0 && theta < 2.0 * kPi)) throw Error(ErrorKind::DomainError, "theta must lie in (0, 2pi)", "theta");
  const std::vector<cd> roots = l_roots(a, theta);
  auto off_circle = [](cd r) { return std::abs(std::abs(r) - 1.0) > kUnitCircle; };
  if (require_loxodromic && std::none_of(roots.begin(), roots.end(), off_circle)) {
    throw Error(ErrorKind::NoRealizableRoot, "every L-root lies on the unit circle", "theta");
  }
  cd chosen;
  if (seed) {
    chosen = *std::min_element(roots.begin(), roots.end(),
                               [&](cd x, cd y) { return std::abs(x - *seed) < std::abs(y - *seed); });
  } else {
    chosen = *std::max_element(roots.begin(), roots.end(), [](cd x, cd y) { return std::abs(x) < std::abs(y); });
  }
  return {std::abs(2.0 * std::log(std::abs(chosen))), chosen};
}

double lobachevsky(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::DomainError, "lobachevsky needs a finite argument", "x");
  double r = std::remainder(x, kPi);  // in [−π/2, π/2]
  return 0.5 * clausen_reduced(2.0 * r);
}

double figure_eight_volume() { return 6.0 * lobachevsky(kPi / 3.0); }

double figure_eight_length(double theta) {
  const double x = 1.0 + std::cos(theta) - std::cos(2.0 * theta);
  return x > 1.0 ? 2.0 * std::acosh(x) : 0.0;
}

AnglePath::AnglePath(int components, Map angles, Map velocity)
    : n_(components), angles_(std::move(angles)), velocity_(std::move(velocity)) {
  if (n_ < 1) throw Error(ErrorKind::InvalidInput, "path needs at least one component", "components");
  if (!angles_) throw Error(ErrorKind::InvalidInput, "path map is empty", "angles");
  for (int k = 0; k <= 16; ++k) {
    const auto v = angles_(k / 16.0);
    if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::InvalidInput, "path dimension mismatch", "angles");
    for (double a : v) {
      if (!(a >= 0.0 && a <= 2.0 * kPi)) throw Error(ErrorKind::InvalidInput, "cone angle outside [0, 2pi]", "angles");
    }
  }
}

AnglePath AnglePath::linear(std::vector<double> from, std::vector<double> to) {
  if (from.size() != to.size()) throw Error(ErrorKind::InvalidInput, "endpoint dimension mismatch", "to");
  const int n = static_cast<int>(from.size());
  auto angles = [from, to](double t) {
    std::vector<double> v(from.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = from[j] + t * (to[j] - from[j]);
    return v;
  };
  auto velocity = [from, to](double) {
    std::vector<double> v(from.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = to[j] - from[j];
    return v;
  };
  return AnglePath(n, angles, velocity);
}

std::vector<double> AnglePath::angles(double t) const { return angles_(t); }

std::vector<double> AnglePath::velocity(double t) const {
  if (velocity_) return velocity_(t);
  const double h = 1e-6;
  const double lo = std::max(0.0, t - h), hi = std::min(1.0, t + h);
  auto a = angles_(lo), b = angles_(hi);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = (b[j] - a[j]) / (hi - lo);
  return a;
}

VolumeCurve schlafli_integrate(const std::vector<LengthFunction>& lengths, const AnglePath& path, double v0,
                               double tol, int samples) {
  if (static_cast<int>(lengths.size()) != path.components()) {
    throw Error(ErrorKind::InvalidInput, "one length function per component", "lengths");
  }
  if (samples < 2) throw Error(ErrorKind::InvalidInput, "need at least two samples", "samples");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive", "tol");

  auto rate = [&](double s) {
    const auto th = path.angles(s);
    const auto v = path.velocity(s);
    double r = 0.0;
    for (std::size_t j = 0; j < th.size(); ++j) {
      if (v[j] != 0.0) r += lengths[j](th[j]) * v[j];
    }
    return r;
  };

  VolumeCurve curve;
  double accumulated = 0.0;
  const double step_tol = tol / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    if (k > 0) accumulated += integrate(rate, curve.t.back(), t, step_tol).value;
    const auto th = path.angles(t);
    std::vector<double> ell(th.size());
    for (std::size_t j = 0; j < th.size(); ++j) ell[j] = lengths[j](th[j]);
    curve.t.push_back(t);
    curve.theta.push_back(th);
    curve.volume.push_back(v0 - 0.5 * accumulated);
    curve.lengths.push_back(std::move(ell));
  }
  return curve;
}

DeformationRange deformation_range(const APolynomial& a, std::optional<double> v0) {
  const double vol0 = v0.value_or(figure_eight_volume());
  auto largest_modulus = [&](double theta) {
    double m = 0.0;
    for (cd r : l_roots(a, theta)) m = std::max(m, std::abs(r));
    return m;
  };
  auto length = [&](double theta) { return 2.0 * std::log(largest_modulus(theta)); };
  auto core_collapsed = [&](double theta) { return largest_modulus(theta) <= 1.0 + kUnitCircle; };
  constexpr double kVolumeFloor = -1e-9;

  constexpr int kGrid = 96;
  double lo = 0.0, vol_lo = vol0;
  for (int k = 1; k <= kGrid; ++k) {
    const double hi = k < kGrid ? 2.0 * kPi * k / kGrid : 2.0 * kPi * (1.0 - 1e-9);
    const double vol_hi = vol_lo - 0.5 * integrate(length, lo, hi).value;
    const bool collapsed = core_collapsed(hi);
    if (collapsed || vol_hi < kVolumeFloor) {
      // Bisect on the first of the two criteria.
      double a_lo = lo, va = vol_lo, a_hi = hi;
      DegenerationCriterion crit =
          collapsed ? DegenerationCriterion::CoreLengthVanishes : DegenerationCriterion::VolumeVanishes;
      while (a_hi - a_lo > 1e-12) {
        const double mid = 0.5 * (a_lo + a_hi);
        const double vm = va - 0.5 * integrate(length, a_lo, mid).value;
        const bool c = core_collapsed(mid);
        if (c || vm < kVolumeFloor) {
          a_hi = mid;
          crit = c ? DegenerationCriterion::CoreLengthVanishes : DegenerationCriterion::VolumeVanishes;
        } else {
          a_lo = mid;
          va = vm;
        }
      }
      const double star = 0.5 * (a_lo + a_hi);
      return {star, crit, va - 0.5 * integrate(length, a_lo, star).value};
    }
    lo = hi;
    vol_lo = vol_hi;
  }
  throw Error(ErrorKind::NoDegenerationFound, "no degeneration before 2pi");
}

std::string_view to_string(DegenerationCriterion c) {
  return c == DegenerationCriterion::VolumeVanishes ? "volume_vanishes" : "core_length_vanishes";
}

}  // namespace hypcone
