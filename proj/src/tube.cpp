#include "hypcone/tube.hpp"

#include <algorithm>
#include <cmath>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {

enum class Model { Hyperbolic, Euclidean };

Model model_of(const Tube& tube) {
  if (tube.curvature() == -1.0) return Model::Hyperbolic;
  if (tube.curvature() == 0.0) return Model::Euclidean;
  throw Error(ErrorKind::UnsupportedCurvature,
              "closed forms are for curvature -1 or 0; rescale the tube first", "K");
}

// Radial factors of the boundary: meridian scale and longitude scale.
std::pair<double, double> radial_factors(const Tube& tube) {
  if (model_of(tube) == Model::Euclidean) return {tube.delta(), 1.0};
  return {std::sinh(tube.delta()), std::cosh(tube.delta())};
}

}  // namespace

Tube::Tube(double sigma, double delta, double theta, double tau, double curvature)
    : sigma_(sigma), delta_(delta), theta_(theta), tau_(tau), curvature_(curvature) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::InvalidInput, "sigma must be positive", "sigma");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidInput, "delta must be positive", "delta");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error(ErrorKind::InvalidInput, "theta must be positive", "theta");
  if (!std::isfinite(tau)) throw Error(ErrorKind::InvalidInput, "tau must be finite", "tau");
  if (!(curvature <= 0.0) || !std::isfinite(curvature)) throw Error(ErrorKind::InvalidInput, "curvature must be <= 0", "K");
}

FlatTorus::FlatTorus(Complex meridian, Complex longitude) : meridian_(meridian), longitude_(longitude) {
  const double scale = std::abs(meridian) * std::abs(longitude);
  if (!std::isfinite(scale) || !(area() > 1e-14 * scale)) {
    throw Error(ErrorKind::InvalidInput, "torus generators must be linearly independent");
  }
}

double FlatTorus::area() const { return std::abs((std::conj(meridian_) * longitude_).imag()); }

std::pair<double, double> boundary_rectangle(const Tube& tube) {
  const auto [across, along] = radial_factors(tube);
  return {tube.theta() * across, tube.sigma() * along};
}

double area(const Tube& tube) {
  const auto [width, height] = boundary_rectangle(tube);
  return width * height;
}

double volume(const Tube& tube) {
  if (model_of(tube) == Model::Euclidean) return 0.5 * tube.theta() * tube.sigma() * tube.delta() * tube.delta();
  const double s = std::sinh(tube.delta());
  return 0.5 * tube.theta() * tube.sigma() * s * s;
}

FlatTorus boundary_torus(const Tube& tube) {
  const auto [across, along] = radial_factors(tube);
  return FlatTorus(tube.theta() * across, Complex(tube.tau() * across, tube.sigma() * along));
}

double meridian_length(const Tube& tube) { return boundary_rectangle(tube).first; }

std::pair<Complex, Complex> reduced_basis(const FlatTorus& torus) {
  Complex u = torus.meridian(), v = torus.longitude();
  if (std::norm(v) < std::norm(u)) std::swap(u, v);
  for (int iter = 0; iter < 10000; ++iter) {
    const double m = std::round((std::conj(u) * v).real() / std::norm(u));
    v -= m * u;
    if (std::norm(v) < std::norm(u)) {
      std::swap(u, v);
    } else {
      break;
    }
  }
  return {u, v};
}

double systole(const FlatTorus& torus) { return std::abs(reduced_basis(torus).first); }

Complex modulus(const FlatTorus& torus) {
  const auto [u, v] = reduced_basis(torus);
  Complex m = v / u;
  if (m.imag() < 0.0) m = -m;
  return m;
}

Tube rescale(const Tube& tube, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidInput, "lambda must be positive", "lambda");
  return Tube(tube.sigma() * lambda, tube.delta() * lambda, tube.theta(), tube.tau(),
              tube.curvature() / (lambda * lambda));
}

Tube cusp_opening_family(CuspOpening kind, int i, double theta) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "family index starts at 1", "i");
  const double delta = static_cast<double>(i);
  const double s = std::sinh(delta), c = std::cosh(delta);
  if (kind == CuspOpening::AnglePinch) return Tube(1.0 / c, delta, 1.0 / s, 0.0);

  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidInput, "theta must be positive", "theta");
  const double sigma = 1.0 / (theta * s * c);
  const double n = std::max(1.0, std::round(theta * s));
  return Tube(sigma, delta, theta, theta / n);
}

}  // namespace hypcone
