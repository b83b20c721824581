#include "hypcone/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Endpoint matching after Möbius round trips.
constexpr double kEndpointTolerance = 1e-7;

struct FixedPoint {
  BoundaryPoint point;
  Complex eigenvalue;  // eigenvalue of the eigenvector representing `point`
};

FixedPoint eigen_direction(const Isometry& g, Complex mu) {
  // (g - mu) v = 0 has two candidate solutions; take the better conditioned.
  const Complex v0 = g.b(), v1 = mu - g.a();
  const Complex w0 = mu - g.d(), w1 = g.c();
  if (std::norm(v0) + std::norm(v1) >= std::norm(w0) + std::norm(w1)) {
    return {BoundaryPoint::homogeneous(v0, v1), mu};
  }
  return {BoundaryPoint::homogeneous(w0, w1), mu};
}

std::pair<FixedPoint, FixedPoint> fixed_points(const Isometry& g) {
  const Complex tr = g.trace();
  Complex root = std::sqrt(tr * tr - 4.0);
  if (std::abs(tr + root) < std::abs(tr - root)) root = -root;
  const Complex mu1 = 0.5 * (tr + root);
  const Complex mu2 = 1.0 / mu1;
  return {eigen_direction(g, mu1), eigen_direction(g, mu2)};
}

// log of the multiplier of g at a fixed point with eigenvalue mu.
Complex log_multiplier(Complex mu) { return -2.0 * std::log(mu); }

Complex wrap_principal(Complex z) {
  double im = std::remainder(z.imag(), kTwoPi);  // [-π, π]
  if (im <= -kPi) im += kTwoPi;
  return {z.real(), im};
}

struct OrientedAxis {
  GeodesicLine line;
  Complex length;
};

OrientedAxis default_orientation(const Isometry& g, IsometryClass::Kind kind) {
  auto [p, q] = fixed_points(g);
  if (kind == IsometryClass::Kind::Loxodromic) {
    // Tail is the repelling point: |multiplier| > 1 there, i.e. |mu| < 1.
    if (std::abs(p.eigenvalue) > std::abs(q.eigenvalue)) std::swap(p, q);
    return {GeodesicLine(p.point, q.point), wrap_principal(log_multiplier(p.eigenvalue))};
  }
  double angle = wrap_principal(log_multiplier(p.eigenvalue)).imag();
  if (angle <= 0.0) {
    std::swap(p, q);
    angle = wrap_principal(log_multiplier(p.eigenvalue)).imag();
  }
  angle = std::clamp(angle, std::numeric_limits<double>::min(), kPi);
  return {GeodesicLine(p.point, q.point), Complex(0.0, angle)};
}

IsometryClass::Kind classify_kind(const Isometry& g, double tol) {
  const Complex tr = g.trace();
  const bool real_trace = std::abs(tr.imag()) <= tol;
  if (real_trace && std::abs(std::abs(tr.real()) - 2.0) <= tol) {
    const double s = tr.real() > 0 ? 1.0 : -1.0;
    const double off = std::max({std::abs(g.a() - s), std::abs(g.b()), std::abs(g.c()),
                                 std::abs(g.d() - s)});
    // Entry deviation of an element whose trace is within tol of ±2 scales
    // like sqrt(tol).
    return off <= std::sqrt(tol) ? IsometryClass::Kind::Identity
                                 : IsometryClass::Kind::Parabolic;
  }
  if (real_trace && std::abs(tr.real()) < 2.0) return IsometryClass::Kind::Elliptic;
  return IsometryClass::Kind::Loxodromic;
}

}  // namespace

// --- BoundaryPoint ---------------------------------------------------------

BoundaryPoint BoundaryPoint::finite(Complex z) { return homogeneous(z, 1.0); }

BoundaryPoint BoundaryPoint::infinity() { return BoundaryPoint(1.0, 0.0); }

BoundaryPoint BoundaryPoint::homogeneous(Complex z0, Complex z1) {
  const double s = std::max(std::abs(z0), std::abs(z1));
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::InvalidInput, "boundary point needs a finite nonzero representative");
  }
  return BoundaryPoint(z0 / s, z1 / s);
}

bool BoundaryPoint::is_infinity(double tol) const { return std::abs(z1_) <= tol; }

Complex BoundaryPoint::value() const {
  if (z1_ == Complex(0.0)) throw Error(ErrorKind::DomainError, "point at infinity has no affine value");
  return z0_ / z1_;
}

double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  const double np = std::sqrt(std::norm(p.z0()) + std::norm(p.z1()));
  const double nq = std::sqrt(std::norm(q.z0()) + std::norm(q.z1()));
  return std::abs(p.z0() * q.z1() - p.z1() * q.z0()) / (np * nq);
}

// --- GeodesicLine / H3Point --------------------------------------------------

GeodesicLine::GeodesicLine(BoundaryPoint tail, BoundaryPoint head) : tail_(tail), head_(head) {
  if (chordal_distance(tail_, head_) < 1e-14) {
    throw Error(ErrorKind::InvalidInput, "geodesic endpoints must be distinct");
  }
}

bool same_line(const GeodesicLine& l, const GeodesicLine& m, double tol) {
  const double direct = std::max(chordal_distance(l.tail(), m.tail()), chordal_distance(l.head(), m.head()));
  const double swapped = std::max(chordal_distance(l.tail(), m.head()), chordal_distance(l.head(), m.tail()));
  return std::min(direct, swapped) < tol;
}

H3Point::H3Point(double x_, double y_, double t_) : x(x_), y(y_), t(t_) {
  if (!(t > 0.0) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t)) {
    throw Error(ErrorKind::InvalidInput, "upper half-space point needs finite coordinates and t > 0", "t");
  }
}

// --- Isometry ----------------------------------------------------------------

Isometry::Isometry(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!std::isfinite(scale) || !(std::abs(det) > 1e-14 * scale * scale)) {
    throw Error(ErrorKind::InvalidInput, "matrix is singular or not finite");
  }
  const Complex s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

Isometry Isometry::normalizing(const GeodesicLine& line) {
  // Columns: image of ∞ = [1:0] is the head, image of 0 = [0:1] the tail.
  return Isometry(line.head().z0(), line.tail().z0(), line.head().z1(), line.tail().z1());
}

Isometry Isometry::along(const GeodesicLine& axis, Complex length) {
  const Isometry h = normalizing(axis);
  const Complex half = std::exp(0.5 * length);
  const Isometry diag(Raw{}, half, 0.0, 0.0, 1.0 / half);
  return h * diag * h.inverse();
}

Isometry Isometry::conjugated_by(const Isometry& h) const { return h * *this * h.inverse(); }

Isometry operator*(const Isometry& g, const Isometry& h) {
  return Isometry(Isometry::Raw{}, g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                  g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
}

BoundaryPoint Isometry::operator()(const BoundaryPoint& p) const {
  return BoundaryPoint::homogeneous(a_ * p.z0() + b_ * p.z1(), c_ * p.z0() + d_ * p.z1());
}

GeodesicLine Isometry::operator()(const GeodesicLine& l) const {
  return GeodesicLine((*this)(l.tail()), (*this)(l.head()));
}

H3Point Isometry::operator()(const H3Point& p) const {
  // Quaternionic action on z + t j.
  const Complex z = p.horizontal();
  const double t2 = p.t * p.t;
  const Complex num = a_ * z + b_;
  const Complex den = c_ * z + d_;
  const double scale = std::norm(den) + std::norm(c_) * t2;
  const Complex w = (num * std::conj(den) + a_ * std::conj(c_) * t2) / scale;
  return H3Point(w.real(), w.imag(), p.t / scale);
}

bool approx_equal(const Isometry& g, const Isometry& h, double tol) {
  auto dist = [&](double s) {
    return std::max({std::abs(g.a() - s * h.a()), std::abs(g.b() - s * h.b()),
                     std::abs(g.c() - s * h.c()), std::abs(g.d() - s * h.d())});
  };
  return std::min(dist(1.0), dist(-1.0)) < tol;
}

// --- classification and complex length ----------------------------------------

IsometryClass classify(const Isometry& g, double tol) {
  IsometryClass out;
  out.kind = classify_kind(g, tol);
  if (out.kind == IsometryClass::Kind::Elliptic) {
    out.angle = default_orientation(g, out.kind).length.imag();
  } else if (out.kind == IsometryClass::Kind::Loxodromic) {
    out.length = default_orientation(g, out.kind).length;
  }
  return out;
}

Complex complex_length(const Isometry& g, const std::optional<GeodesicLine>& orientation_hint,
                       double tol) {
  const auto kind = classify_kind(g, tol);
  if (kind == IsometryClass::Kind::Identity || kind == IsometryClass::Kind::Parabolic) {
    throw Error(ErrorKind::ParabolicOrIdentity, "complex length needs an elliptic or loxodromic element");
  }
  if (!orientation_hint) return default_orientation(g, kind).length;

  auto [p, q] = fixed_points(g);
  const GeodesicLine& hint = *orientation_hint;
  if (chordal_distance(p.point, hint.tail()) > chordal_distance(q.point, hint.tail())) std::swap(p, q);
  if (chordal_distance(p.point, hint.tail()) > kEndpointTolerance ||
      chordal_distance(q.point, hint.head()) > kEndpointTolerance) {
    throw Error(ErrorKind::InvalidInput, "orientation hint is not the axis of the isometry",
                "orientation_hint");
  }
  Complex length = log_multiplier(p.eigenvalue);
  double im = std::fmod(length.imag(), kTwoPi);
  if (im < 0.0) im += kTwoPi;
  const double re = kind == IsometryClass::Kind::Elliptic ? 0.0 : length.real();
  return {re, im};
}

GeodesicLine axis(const Isometry& g, double tol) {
  const auto kind = classify_kind(g, tol);
  if (kind == IsometryClass::Kind::Identity || kind == IsometryClass::Kind::Parabolic) {
    throw Error(ErrorKind::NoAxis, "parabolic and identity elements have no axis");
  }
  return default_orientation(g, kind).line;
}

// --- distances ---------------------------------------------------------------

double hyperbolic_distance(const H3Point& p, const H3Point& q) {
  // sinh(d/2) = |p - q|_euclid / (2 sqrt(t_p t_q))
  const double dx = p.x - q.x, dy = p.y - q.y, dt = p.t - q.t;
  const double chord = std::sqrt(dx * dx + dy * dy + dt * dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t * q.t)));
}

double distance_to_line(const H3Point& p, const GeodesicLine& line) {
  const H3Point n = Isometry::normalizing(line).inverse()(p);
  return std::asinh(std::abs(n.horizontal()) / n.t);
}

H3Point apply(const Isometry& g, const H3Point& p) { return g(p); }

// --- axes meeting ------------------------------------------------------------

AxesMeetResult axes_meet_point(const Isometry& g1, const Isometry& g2, double tol) {
  const IsometryClass c1 = classify(g1, tol);
  const IsometryClass c2 = classify(g2, tol);
  if (c1.kind != IsometryClass::Kind::Elliptic) throw Error(ErrorKind::NotElliptic, "first element is not elliptic", "g1");
  if (c2.kind != IsometryClass::Kind::Elliptic) throw Error(ErrorKind::NotElliptic, "second element is not elliptic", "g2");

  AxesMeetResult out;
  const Isometry product = g1 * g2;
  const IsometryClass c12 = classify(product, tol);
  out.product_kind = c12.kind;
  if (c12.kind == IsometryClass::Kind::Elliptic) out.angle_sum = c1.angle + c2.angle + c12.angle;

  // Normalize the first axis to {0, ∞}.
  const Isometry h1 = Isometry::normalizing(axis(g1, tol));
  const GeodesicLine other = h1.inverse()(axis(g2, tol));
  const auto at_pole = [](const BoundaryPoint& p) {
    return chordal_distance(p, BoundaryPoint::finite(0.0)) < 1e-12 ||
           chordal_distance(p, BoundaryPoint::infinity()) < 1e-12;
  };
  const int shared = int(at_pole(other.tail())) + int(at_pole(other.head()));
  if (shared == 2) {
    out.configuration = AxesConfiguration::Coaxial;
    return out;
  }
  if (shared == 1) {
    out.configuration = AxesConfiguration::SharedIdealPoint;
    out.axis_separation = std::numeric_limits<double>::infinity();
    return out;
  }

  // Dilate so that the second axis has endpoints w and 1/w; it is then the
  // image of {0, ∞} under exp((δ/2) [[0,1],[1,0]]) with tanh(δ/2) = w, and the
  // common perpendicular runs along the geodesic {-1, 1}.
  const Complex p = other.tail().value(), q = other.head().value();
  const Complex s = std::sqrt(p * q);
  Complex w = p / s;
  if (std::abs(w) > 1.0) w = 1.0 / w;
  const double r = (2.0 * std::atanh(w)).real();
  out.axis_separation = std::abs(r);

  const Complex root_s = std::sqrt(s);
  const Isometry back = h1 * Isometry(root_s, 0.0, 0.0, 1.0 / root_s);
  const Isometry half_boost(std::cosh(0.25 * r), std::sinh(0.25 * r), std::sinh(0.25 * r),
                            std::cosh(0.25 * r));
  out.closest_point = back(half_boost(H3Point(0.0, 0.0, 1.0)));
  out.configuration = out.axis_separation < 1e-9 ? AxesConfiguration::Intersecting
                                                  : AxesConfiguration::Disjoint;

  const bool hypothesis = c12.kind == IsometryClass::Kind::Elliptic && out.angle_sum > kTwoPi + 1e-12;
  if (hypothesis && out.configuration == AxesConfiguration::Intersecting &&
      distance_to_line(*out.closest_point, axis(product, tol)) < 1e-8) {
    out.point = out.closest_point;
  }
  return out;
}

}  // namespace hypcone
