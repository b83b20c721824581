#pragma once

#include <complex>
#include <numbers>
#include <utility>

namespace hypcone {

using Complex = std::complex<double>;

/// Equidistant tube of radius `delta` around a closed geodesic of length
/// `sigma` with cone angle `theta` and twist `tau` (meridional shear, in
/// radians, per core period). Constant sectional curvature `curvature` ≤ 0.
class Tube {
 public:
  Tube(double sigma, double delta, double theta, double tau = 0.0, double curvature = -1.0);

  double sigma() const { return sigma_; }
  double delta() const { return delta_; }
  double theta() const { return theta_; }
  double tau() const { return tau_; }
  double curvature() const { return curvature_; }

 private:
  double sigma_, delta_, theta_, tau_, curvature_;
};

/// Flat torus ℂ / (meridian ℤ + longitude ℤ).
class FlatTorus {
 public:
  FlatTorus(Complex meridian, Complex longitude);

  Complex meridian() const { return meridian_; }
  Complex longitude() const { return longitude_; }
  double area() const;

 private:
  Complex meridian_, longitude_;
};

/// Meridional × longitudinal side lengths of the rectangular fundamental
/// domain of the tube boundary.
std::pair<double, double> boundary_rectangle(const Tube& tube);
double area(const Tube& tube);
double volume(const Tube& tube);
FlatTorus boundary_torus(const Tube& tube);

/// Length of the meridian, the boundary curve bounding a disk in the tube.
double meridian_length(const Tube& tube);

/// Lagrange–Gauss reduced basis: |first| ≤ |second|, |Re⟨first, second⟩| ≤ |first|²/2.
std::pair<Complex, Complex> reduced_basis(const FlatTorus& torus);
double systole(const FlatTorus& torus);
inline double injectivity_radius(const FlatTorus& torus) { return 0.5 * systole(torus); }
/// Shape parameter in the standard fundamental domain: Im > 0, |Re| ≤ 1/2, |m| ≥ 1.
Complex modulus(const FlatTorus& torus);

/// Multiplies lengths by lambda; curvature scales by 1/lambda².
Tube rescale(const Tube& tube, double lambda);

enum class CuspOpening { AnglePinch, Twist };

inline constexpr double kDefaultTwistAngle = std::numbers::pi / 2.0;

/// i-th member (i ≥ 1, radius δ_i = i) of a family of tubes opening up to a
/// rank-2 cusp. AnglePinch: θ = 1/sinh δ, σ = 1/cosh δ. Twist: θ fixed,
/// σ sinh δ cosh δ = 1/θ, τ = θ/N with N the nearest integer to θ sinh δ, so
/// the boundary keeps the near-square basis {b, N b − a}.
Tube cusp_opening_family(CuspOpening kind, int i, double theta = kDefaultTwistAngle);

}  // namespace hypcone
