#pragma once

#include <complex>
#include <optional>

namespace hypcone {

using Complex = std::complex<double>;

inline constexpr double kTraceTolerance = 1e-10;

/// A point of the boundary sphere C ∪ {∞}, stored in homogeneous
/// coordinates [z0 : z1] scaled so that max(|z0|, |z1|) = 1.
class BoundaryPoint {
 public:
  static BoundaryPoint finite(Complex z);
  static BoundaryPoint infinity();
  static BoundaryPoint homogeneous(Complex z0, Complex z1);

  Complex z0() const { return z0_; }
  Complex z1() const { return z1_; }

  bool is_infinity(double tol = 1e-14) const;
  /// Affine coordinate z0/z1; throws DomainError at infinity.
  Complex value() const;

 private:
  BoundaryPoint(Complex z0, Complex z1) : z0_(z0), z1_(z1) {}
  Complex z0_;
  Complex z1_;
};

/// Chordal distance on the Riemann sphere (sin of the half-angle between
/// the two points seen from the centre), in [0, 1].
double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q);

/// An oriented geodesic of H³, given by its two ideal endpoints.
class GeodesicLine {
 public:
  GeodesicLine(BoundaryPoint tail, BoundaryPoint head);

  const BoundaryPoint& tail() const { return tail_; }
  const BoundaryPoint& head() const { return head_; }
  GeodesicLine reversed() const { return GeodesicLine(head_, tail_); }

 private:
  BoundaryPoint tail_;
  BoundaryPoint head_;
};

/// Unoriented comparison of endpoint sets.
bool same_line(const GeodesicLine& l, const GeodesicLine& m, double tol = 1e-9);

/// Upper half-space point (x, y, t), t > 0.
struct H3Point {
  double x = 0.0;
  double y = 0.0;
  double t = 1.0;

  H3Point() = default;
  H3Point(double x_, double y_, double t_);

  Complex horizontal() const { return {x, y}; }
};

/// Orientation-preserving isometry of H³ as a unit-determinant 2×2 complex
/// matrix. M and −M are the same isometry.
class Isometry {
 public:
  /// Rescales by a square root of the determinant; throws InvalidInput for
  /// (numerically) singular matrices.
  Isometry(Complex a, Complex b, Complex c, Complex d);

  static Isometry identity() { return Isometry(1.0, 0.0, 0.0, 1.0); }
  /// The isometry with complex length `length` along the oriented line:
  /// multiplier e^length at the tail, i.e. rotation by Im and translation by
  /// Re towards the head.
  static Isometry along(const GeodesicLine& axis, Complex length);
  static Isometry rotation(const GeodesicLine& axis, double angle) {
    return along(axis, Complex(0.0, angle));
  }
  /// A map taking 0 to `line.tail()` and ∞ to `line.head()`.
  static Isometry normalizing(const GeodesicLine& line);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex trace() const { return a_ + d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }
  Isometry inverse() const { return Isometry(d_, -b_, -c_, a_); }
  Isometry conjugated_by(const Isometry& h) const;

  BoundaryPoint operator()(const BoundaryPoint& p) const;
  GeodesicLine operator()(const GeodesicLine& l) const;
  H3Point operator()(const H3Point& p) const;

  friend Isometry operator*(const Isometry& g, const Isometry& h);

 private:
  struct Raw {};
  Isometry(Raw, Complex a, Complex b, Complex c, Complex d)
      : a_(a), b_(b), c_(c), d_(d) {}

  Complex a_, b_, c_, d_;
};

/// Projective closeness: min(‖g − h‖∞, ‖g + h‖∞) < tol.
bool approx_equal(const Isometry& g, const Isometry& h, double tol = 1e-9);

struct IsometryClass {
  enum class Kind { Identity, Elliptic, Parabolic, Loxodromic };
  Kind kind = Kind::Identity;
  /// Elliptic only: rotation angle in (0, π] about the default-oriented axis.
  double angle = 0.0;
  /// Loxodromic only: ℓ + iτ with ℓ > 0 and τ ∈ (−π, π].
  Complex length{};
};

IsometryClass classify(const Isometry& g, double tol = kTraceTolerance);

/// Complex length 2 log λ. Without a hint: elliptic → iα with α ∈ (0, π],
/// loxodromic → ℓ + iτ with ℓ > 0, τ ∈ (−π, π]. With a hint the axis is
/// oriented like the hint (the hint's endpoints must be the fixed points):
/// the real part may then be negative and the imaginary part lies in [0, 2π).
Complex complex_length(const Isometry& g,
                       const std::optional<GeodesicLine>& orientation_hint = std::nullopt,
                       double tol = kTraceTolerance);

/// Invariant geodesic, oriented as in complex_length without hint
/// (loxodromic: repelling → attracting fixed point).
GeodesicLine axis(const Isometry& g, double tol = kTraceTolerance);

double hyperbolic_distance(const H3Point& p, const H3Point& q);
double distance_to_line(const H3Point& p, const GeodesicLine& line);

H3Point apply(const Isometry& g, const H3Point& p);

enum class AxesConfiguration {
  Intersecting,      // the two axes meet in H³
  SharedIdealPoint,  // asymptotic: one common endpoint on the sphere at infinity
  Coaxial,           // same axis
  Disjoint,          // ultraparallel or skew: unique common perpendicular
};

struct AxesMeetResult {
  /// Set iff the product is elliptic, the total rotation angle exceeds 2π and
  /// all three axes pass through this point.
  std::optional<H3Point> point;
  AxesConfiguration configuration = AxesConfiguration::Disjoint;
  IsometryClass::Kind product_kind = IsometryClass::Kind::Identity;
  /// angle(g1) + angle(g2) + angle(g1 g2), unoriented angles in (0, π];
  /// zero when the product is not elliptic.
  double angle_sum = 0.0;
  /// Length of the common perpendicular of the two axes (0 when they meet,
  /// +∞ when they share an ideal point).
  double axis_separation = 0.0;
  /// Point minimizing the summed squared distance to both axes (midpoint of
  /// the common perpendicular); empty for asymptotic or coaxial axes.
  std::optional<H3Point> closest_point;
};

/// Common point of the axes of g1, g2 and g1·g2 when the three rotation angles
/// sum to more than 2π. Throws NotElliptic unless both inputs are elliptic.
AxesMeetResult axes_meet_point(const Isometry& g1, const Isometry& g2,
                               double tol = kTraceTolerance);

}  // namespace hypcone
