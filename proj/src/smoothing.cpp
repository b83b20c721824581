#include "hypcone/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypcone/error.hpp"
#include "hypcone/quadrature.hpp"

namespace hypcone {
namespace {

constexpr int kProfilePanels = 32;

struct Blend {
  double h, dh, ddh;  // derivatives with respect to s
};

// h(s) = e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}) = 1 / (1 + e^u), u = 1/s − 1/(1−s).
Blend blend(double s) {
  if (s <= 0.0) return {0.0, 0.0, 0.0};
  if (s >= 1.0) return {1.0, 0.0, 0.0};
  const double u = 1.0 / s - 1.0 / (1.0 - s);
  const double du = -1.0 / (s * s) - 1.0 / ((1.0 - s) * (1.0 - s));
  const double ddu = 2.0 / (s * s * s) - 2.0 / ((1.0 - s) * (1.0 - s) * (1.0 - s));
  double h, hh;  // h and h(1 − h)
  if (u > 0.0) {
    const double t = std::exp(-u);
    h = t / (1.0 + t);
    hh = t / ((1.0 + t) * (1.0 + t));
  } else {
    const double t = std::exp(u);
    h = 1.0 / (1.0 + t);
    hh = t / ((1.0 + t) * (1.0 + t));
  }
  const double dh = -hh * du;
  const double ddh = -dh * (1.0 - 2.0 * h) * du - hh * ddu;
  return {h, dh, ddh};
}

class StandardProfile {
 public:
  explicit StandardProfile(double epsilon) : eps_(epsilon) {
    // ψ(ε) = I1 + a·I2 must equal cosh ε.
    const double i1 = integrate_fixed([this](double x) { return blended(x).h * q(x); }, 0.0, eps_, kProfilePanels);
    const double i2 = integrate_fixed([this](double x) { return (1.0 - blended(x).h) * q_over_delta(x); },
                                      0.0, eps_, kProfilePanels);
    a_ = (std::cosh(eps_) - i1) / i2;
  }

  SmoothingProfile::Values operator()(double d) const {
    const Blend b = blended(d);
    const double phi = b.h + (1.0 - b.h) * a_ / d;
    const double dphi = b.dh * (1.0 - a_ / d) - (1.0 - b.h) * a_ / (d * d);
    const double qv = q(d);
    const double dq = b.dh * (std::sinh(d) - d) + b.h * std::cosh(d) + (1.0 - b.h);
    const double psi = integrate_fixed([this](double x) { return integrand(x); }, 0.0, d, kProfilePanels);
    return {phi, dphi, psi, phi * qv, dphi * qv + phi * dq};
  }

 private:
  Blend blended(double d) const {
    const Blend b = blend(d / eps_);
    return {b.h, b.dh / eps_, b.ddh / (eps_ * eps_)};
  }
  double q(double d) const {
    const double h = blended(d).h;
    return h * std::sinh(d) + (1.0 - h) * d;
  }
  double q_over_delta(double d) const {
    const double h = blended(d).h;
    return h * std::sinh(d) / d + (1.0 - h);
  }
  // φ q, written so that the a/δ pole cancels analytically.
  double integrand(double d) const {
    const double h = blended(d).h;
    return h * q(d) + a_ * (1.0 - h) * q_over_delta(d);
  }

  double eps_;
  double a_ = 0.0;
};

using Gamma = std::array<std::array<std::array<double, 3>, 3>, 3>;

// Eighth-order central difference weights for offsets 1..4.
constexpr std::array<double, 4> kStencil{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr int kReach = 4;

double derivative(const std::function<double(double)>& f, double x, double h) {
  double s = 0.0;
  for (int k = 0; k < kReach; ++k) s += kStencil[k] * (f(x + (k + 1) * h) - f(x - (k + 1) * h));
  return s / h;
}

// Γ^k_ij of a diagonal metric depending on x1 only, from metric values and
// x1-derivatives.
Gamma christoffel_from(const std::array<double, 3>& g, const std::array<double, 3>& dg) {
  auto dmetric = [&](int m, int i, int j) { return (m == 0 && i == j) ? dg[i] : 0.0; };
  Gamma gamma{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        gamma[k][i][j] = 0.5 / g[k] * (dmetric(i, j, k) + dmetric(j, i, k) - dmetric(k, i, j));
  return gamma;
}

Gamma christoffel_fd(const DiagonalMetric& metric, double x, double h) {
  std::array<double, 3> g{}, dg{};
  for (int i = 0; i < 3; ++i) {
    g[i] = metric[i](x);
    dg[i] = derivative(metric[i], x, h);
  }
  return christoffel_from(g, dg);
}

}  // namespace

SmoothingProfile::SmoothingProfile(double epsilon, Evaluator inner)
    : epsilon_(epsilon), inner_(std::move(inner)) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive", "epsilon");
  if (!inner_) throw Error(ErrorKind::InvalidInput, "profile evaluator is empty");
}

SmoothingProfile SmoothingProfile::standard(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive", "epsilon");
  auto impl = std::make_shared<const StandardProfile>(epsilon);
  return SmoothingProfile(epsilon, [impl](double d) { return (*impl)(d); });
}

SmoothingProfile::Values SmoothingProfile::operator()(double delta) const {
  if (!(delta > 0.0)) throw Error(ErrorKind::DomainError, "delta must be positive", "delta");
  if (delta >= epsilon_) return {1.0, 0.0, std::cosh(delta), std::sinh(delta), std::cosh(delta)};
  return inner_(delta);
}

Gamma ConnectionTable::christoffel_symbols() const {
  Gamma gamma{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (direction[i][j] >= 0) gamma[direction[i][j]][i][j] = value[i][j];
  return gamma;
}

ConnectionTable christoffel(const SmoothingProfile& profile, double delta) {
  const auto v = profile(delta);
  const double coth = 1.0 / std::tanh(delta);
  ConnectionTable t;
  for (auto& row : t.direction) row.fill(-1);
  auto set = [&](int i, int j, double value, int dir) {
    t.value[i][j] = value;
    t.direction[i][j] = dir;
  };
  set(0, 0, v.dphi / v.phi, 0);
  set(0, 1, coth, 1);
  set(1, 0, coth, 1);
  set(0, 2, v.dpsi / v.psi, 2);
  set(2, 0, v.dpsi / v.psi, 2);
  set(1, 1, -std::sinh(delta) * std::cosh(delta) / (v.phi * v.phi), 0);
  set(2, 2, -v.psi * v.dpsi / (v.phi * v.phi), 0);
  return t;
}

SectionalCurvatures sectional_curvatures(const SmoothingProfile& profile, double delta) {
  const auto v = profile(delta);
  const double coth = 1.0 / std::tanh(delta);
  const double inv_phi2 = 1.0 / (v.phi * v.phi);
  return {
      inv_phi2 * (v.dphi * coth / v.phi - 1.0),
      -inv_phi2 * (v.ddpsi / v.psi - v.dphi * v.dpsi / (v.phi * v.psi)),
      -v.dpsi * coth * inv_phi2 / v.psi,
  };
}

DiagonalMetric metric_of(const SmoothingProfile& profile) {
  return {
      [profile](double d) { const double p = profile(d).phi; return p * p; },
      [](double d) { const double s = std::sinh(d); return s * s; },
      [profile](double d) { const double p = profile(d).psi; return p * p; },
  };
}

OracleResult curvature_oracle(const DiagonalMetric& metric, double delta, double h) {
  if (!(h > 0.0) || !(delta > 2 * kReach * h)) {
    throw Error(ErrorKind::DomainError, "curvature oracle needs delta > 8h > 0", "h");
  }
  OracleResult out;
  if (h > delta / 20.0) out.warning = "finite-difference step is large relative to delta";

  const Gamma gamma = christoffel_fd(metric, delta, h);
  // ∂_1 Γ by the same stencil applied to Γ itself.
  std::array<Gamma, 2 * kReach> shifted;
  for (int k = 0; k < kReach; ++k) {
    shifted[2 * k] = christoffel_fd(metric, delta + (k + 1) * h, h);
    shifted[2 * k + 1] = christoffel_fd(metric, delta - (k + 1) * h, h);
  }
  Gamma dgamma{};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < kReach; ++k) s += kStencil[k] * (shifted[2 * k][l][i][j] - shifted[2 * k + 1][l][i][j]);
        dgamma[l][i][j] = s / h;
      }

  auto partial = [&](int m, int k, int i, int j) { return m == 0 ? dgamma[k][i][j] : 0.0; };
  // R^l_ijk for R(∂i, ∂j)∂k = ∇i∇j∂k − ∇j∇i∂k.
  auto riemann = [&](int l, int i, int j, int k) {
    double r = partial(i, l, j, k) - partial(j, l, i, k);
    for (int m = 0; m < 3; ++m) r += gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k];
    return r;
  };
  std::array<double, 3> g{};
  for (int i = 0; i < 3; ++i) g[i] = metric[i](delta);
  // K(∂i, ∂j) = −⟨R(∂i,∂j)∂i, ∂j⟩ / (g_ii g_jj) = −R^j_iji / g_ii.
  auto sectional = [&](int i, int j) { return -riemann(j, i, j, i) / g[i]; };
  out.curvatures = {sectional(0, 1), sectional(0, 2), sectional(1, 2)};
  out.christoffel_symbols = gamma;
  return out;
}

CurvatureReport negativity_check(const SmoothingProfile& profile, int grid_size, std::optional<double> lo,
                                 std::optional<double> hi) {
  if (grid_size < 2) throw Error(ErrorKind::InvalidInput, "grid needs at least two points", "grid");
  const double eps = profile.epsilon();
  const double a = lo.value_or(eps * 1e-6), b = hi.value_or(eps);
  if (!(a > 0.0) || !(b > a)) throw Error(ErrorKind::InvalidInput, "grid range must satisfy 0 < lo < hi", "range");

  CurvatureReport report;
  report.min = std::numeric_limits<double>::infinity();
  report.max = -std::numeric_limits<double>::infinity();
  const DiagonalMetric metric = metric_of(profile);
  const double log_a = std::log(a), log_b = std::log(b);
  double prev_density = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    const double d = k + 1 == grid_size ? b : std::exp(log_a + (log_b - log_a) * k / (grid_size - 1));
    const SectionalCurvatures c = sectional_curvatures(profile, d);
    report.grid.push_back(d);
    report.k12.push_back(c.k12);
    report.k13.push_back(c.k13);
    report.k23.push_back(c.k23);
    report.min = std::min({report.min, c.k12, c.k13, c.k23});
    report.max = std::max({report.max, c.k12, c.k13, c.k23});

    const auto v = profile(d);
    const double density = v.phi * std::sinh(d) * v.psi;
    if (k > 0) report.volume_integral += 0.5 * (density + prev_density) * (d - report.grid[k - 1]);
    prev_density = density;

    // The profile varies on the scale of ε, so the step does too.
    const OracleResult o = curvature_oracle(metric, d, std::min(1e-3 * profile.epsilon(), d / 100.0));
    const double dev = std::max({std::abs(o.curvatures.k12 - c.k12), std::abs(o.curvatures.k13 - c.k13),
                                 std::abs(o.curvatures.k23 - c.k23)});
    if (!(dev <= report.oracle_max_deviation)) {
      report.oracle_max_deviation = dev;
      report.oracle_worst_delta = d;
    }
  }
  report.oracle_consistent = report.oracle_max_deviation < kOracleAgreement;
  return report;
}

double radial_distance(const SmoothingProfile& profile, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::DomainError, "t must be positive", "t");
  const double eps = profile.epsilon();
  if (t >= eps) return eps - t;
  // δ = e^x: ∫ φ(e^x) e^x dx keeps the 1/δ pole harmless.
  const double span = std::log(eps) - std::log(t);
  const int panels = std::max(8, static_cast<int>(std::ceil(4 * span)));
  return integrate_fixed([&](double x) { const double d = std::exp(x); return profile(d).phi * d; },
                         std::log(t), std::log(eps), panels);
}

}  // namespace hypcone
