#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hypcone {

/// Pair of warping functions (φ, ψ) for the metric
///   φ²(δ) dδ² + sinh²δ dθ² + ψ²(δ) dλ²
/// around a singular geodesic. For δ ≥ ε the metric is the hyperbolic one
/// (φ = 1, ψ = cosh δ); below ε the profile supplies the values.
class SmoothingProfile {
 public:
  struct Values {
    double phi, dphi, psi, dpsi, ddpsi;
  };
  using Evaluator = std::function<Values(double delta)>;

  SmoothingProfile(double epsilon, Evaluator inner);

  /// The default C∞ profile: with h the logistic blend of e^{-1/s} on s = δ/ε,
  /// φ = h + (1−h)·a/δ and ψ' = φ·(h sinh δ + (1−h) δ), ψ(0) = 0, where the
  /// constant a makes ψ(ε) = cosh ε.
  static SmoothingProfile standard(double epsilon = 0.1);

  double epsilon() const { return epsilon_; }
  /// Throws DomainError for delta ≤ 0.
  Values operator()(double delta) const;

 private:
  double epsilon_;
  Evaluator inner_;
};

/// ∇_{∂i} ∂j = value(i, j) · ∂_{direction(i, j)}; direction −1 means zero.
struct ConnectionTable {
  std::array<std::array<double, 3>, 3> value{};
  std::array<std::array<int, 3>, 3> direction{};

  /// Christoffel symbols Γ^k_ij, indexed [k][i][j].
  std::array<std::array<std::array<double, 3>, 3>, 3> christoffel_symbols() const;
};

struct SectionalCurvatures {
  double k12, k13, k23;
};

ConnectionTable christoffel(const SmoothingProfile& profile, double delta);
SectionalCurvatures sectional_curvatures(const SmoothingProfile& profile, double delta);

/// Diagonal metric diag(g11, g22, g33) whose coefficients depend on x1 = δ only.
using DiagonalMetric = std::array<std::function<double(double)>, 3>;

DiagonalMetric metric_of(const SmoothingProfile& profile);

struct OracleResult {
  SectionalCurvatures curvatures;
  std::array<std::array<std::array<double, 3>, 3>, 3> christoffel_symbols;
  std::optional<std::string> warning;
};

/// Finite-difference curvature: metric derivatives and Christoffel
/// derivatives by 8th-order central differences of step h, then the Riemann
/// tensor and K(X,Y) = −⟨R(X,Y)X, Y⟩ / (|X|²|Y|² − ⟨X,Y⟩²). Requires
/// delta > 8h > 0.
OracleResult curvature_oracle(const DiagonalMetric& metric, double delta, double h = 1e-4);

struct CurvatureReport {
  std::vector<double> grid;
  std::vector<double> k12, k13, k23;
  double min = 0.0;
  double max = 0.0;
  /// ∫ φ sinh δ ψ dδ over the grid (trapezoid), per unit θ and λ.
  double volume_integral = 0.0;
  /// Largest |closed form − oracle| over the grid.
  double oracle_max_deviation = 0.0;
  double oracle_worst_delta = 0.0;
  bool oracle_consistent = true;
};

inline constexpr double kOracleAgreement = 1e-6;

/// Curvatures on a log-spaced grid over [lo, hi] (default [ε·1e-6, ε]).
/// A failing profile shows up as max ≥ 0 or oracle_consistent == false.
CurvatureReport negativity_check(const SmoothingProfile& profile, int grid_size,
                                 std::optional<double> lo = std::nullopt,
                                 std::optional<double> hi = std::nullopt);

/// ∫_t^ε φ(δ) dδ, the distance to the boundary of the modified region.
double radial_distance(const SmoothingProfile& profile, double t);

}  // namespace hypcone
