#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypcone {

/// Integer polynomial Σ c · L^i · M^j.
class APolynomial {
 public:
  struct Monomial {
    int i;  // exponent of L
    int j;  // exponent of M
    long long c;
  };

  /// Merges repeated monomials, drops zero coefficients. Throws InvalidInput
  /// for negative exponents or when no monomial has i > 0 or none has i = 0.
  explicit APolynomial(std::vector<Monomial> terms);

  /// Text format: one `i j c` per line, `#` starts a comment.
  static APolynomial parse(const std::string& text);
  static APolynomial load(const std::string& path);
  static APolynomial figure_eight();

  const std::vector<Monomial>& terms() const { return terms_; }
  int l_degree() const;

  /// Coefficients in L (index = power of L) after substituting M.
  std::vector<std::complex<double>> substitute(std::complex<double> m) const;

 private:
  std::vector<Monomial> terms_;
};

struct CoreLength {
  double length;
  std::complex<double> L;
};

/// All L-roots at M = exp(iθ/2), leading/trailing zero roots removed.
std::vector<std::complex<double>> l_roots(const APolynomial& a, double theta);

/// Geometric branch at cone angle θ: the root nearest `seed` if given, else
/// the root of largest modulus. length = |2 log |L||.
CoreLength core_length_from_apoly(const APolynomial& a, double theta,
                                  std::optional<std::complex<double>> seed = std::nullopt,
                                  bool require_loxodromic = false);

/// Λ(x) = −∫₀ˣ log|2 sin t| dt.
double lobachevsky(double x);

/// 6Λ(π/3), the volume of the complete figure-eight complement.
double figure_eight_volume();

/// θ : [0, 1] → (0, 2π]ⁿ, with optional derivative.
class AnglePath {
 public:
  using Map = std::function<std::vector<double>(double)>;

  AnglePath(int components, Map angles, Map velocity = {});
  static AnglePath linear(std::vector<double> from, std::vector<double> to);

  int components() const { return n_; }
  std::vector<double> angles(double t) const;
  /// Analytic velocity if supplied, otherwise a central difference.
  std::vector<double> velocity(double t) const;

 private:
  int n_;
  Map angles_;
  Map velocity_;
};

struct VolumeCurve {
  std::vector<double> t;
  std::vector<std::vector<double>> theta;
  std::vector<double> volume;
  std::vector<std::vector<double>> lengths;
};

using LengthFunction = std::function<double(double theta)>;

/// vol(t) = v0 − ½ Σ_j ∫ ℓ_j(θ(s)) θ̇^j(s) ds on `samples` equally spaced t.
VolumeCurve schlafli_integrate(const std::vector<LengthFunction>& lengths, const AnglePath& path,
                               double v0, double tol = 1e-10, int samples = 101);

/// Core length of the figure-eight cone manifold, 2 arccosh(1 + cos θ − cos 2θ).
double figure_eight_length(double theta);

enum class DegenerationCriterion { VolumeVanishes, CoreLengthVanishes };

struct DeformationRange {
  double theta_star;
  DegenerationCriterion criterion;
  double volume_at_star;
};

/// First cone angle where the increasing deformation from the cusp
/// degenerates. v0 defaults to figure_eight_volume().
DeformationRange deformation_range(const APolynomial& a, std::optional<double> v0 = std::nullopt);

std::string_view to_string(DegenerationCriterion c);

}  // namespace hypcone
