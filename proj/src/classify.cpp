#include "hypcone/classify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kAngleSumTolerance = 1e-12;
}  // namespace

ConeSurface::ConeSurface(int chi_, std::vector<double> angles_) : chi(chi_), angles(std::move(angles_)) {
  if (chi > 2 || chi % 2 != 0) throw Error(ErrorKind::InvalidInput, "chi must be an even integer <= 2", "chi");
  for (double a : angles) {
    if (!(a > 0.0 && a <= 2.0 * kPi)) throw Error(ErrorKind::InvalidInput, "cone angles must lie in (0, 2pi]", "angles");
  }
}

double gauss_bonnet_defect(const ConeSurface& s) {
  double excess = 0.0;
  for (double a : s.angles) excess += 2.0 * kPi - a;
  return 2.0 * kPi * s.chi - excess;
}

SurfaceVerdict classify_flat_le_pi(const ConeSurface& s) {
  for (double a : s.angles) {
    if (a > kPi) throw Error(ErrorKind::AngleAbovePi, "cone angle exceeds pi", "angles");
  }
  const double defect = gauss_bonnet_defect(s);
  FlatConeSphere kind = FlatConeSphere::NotFlatOrAngleTooBig;
  // With every angle ≤ π each cone point contributes at least π to the
  // excess, so a flat sphere has three or four of them.
  if (s.chi == 2 && std::abs(defect) <= kFlatTolerance) {
    if (s.angles.size() == 4) kind = FlatConeSphere::FourPiSphere;
    if (s.angles.size() == 3) kind = FlatConeSphere::TripleSphere;
  }
  return {kind, defect};
}

std::string_view to_string(FlatConeSphere k) {
  switch (k) {
    case FlatConeSphere::FourPiSphere: return "four_pi_sphere";
    case FlatConeSphere::TripleSphere: return "triple_sphere";
    case FlatConeSphere::NotFlatOrAngleTooBig: return "not_flat_or_angle_too_big";
  }
  return "unknown";
}

TetrahedronAngles::TetrahedronAngles(double a, double b, double g, double e) : alpha(a), beta(b), gamma(g), eps(e) {
  for (auto [v, name] : {std::pair{a, "alpha"}, std::pair{b, "beta"}, std::pair{g, "gamma"}}) {
    if (!(v > 0.0 && v < kPi)) throw Error(ErrorKind::InvalidInput, "angle must lie in (0, pi)", name);
  }
  if (std::abs(a + b + g - 2.0 * kPi) > kAngleSumTolerance) {
    throw Error(ErrorKind::InvalidInput, "alpha + beta + gamma must equal 2pi", "gamma");
  }
  if (!std::isfinite(e)) throw Error(ErrorKind::InvalidInput, "eps must be finite", "eps");
}

double TetrahedronAngles::dihedral(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u > 3 || v > 3) throw Error(ErrorKind::InvalidInput, "faces must be distinct in 0..3");
  if (u > v) std::swap(u, v);
  double base;
  if ((u == 0 && v == 1) || (u == 2 && v == 3)) base = alpha;
  else if ((u == 0 && v == 2) || (u == 1 && v == 3)) base = beta;
  else base = gamma;
  return 0.5 * (base - eps);
}

Eigen::Matrix4d gram_matrix(const TetrahedronAngles& t) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) g(u, v) = g(v, u) = -std::cos(t.dihedral(u, v));
  return g;
}

double vertex_minor(const Eigen::Matrix4d& g, int v) {
  if (v < 0 || v > 3) throw Error(ErrorKind::InvalidInput, "vertex index must lie in 0..3", "vertex");
  Eigen::Matrix3d m;
  for (int r = 0, rr = 0; r < 4; ++r) {
    if (r == v) continue;
    for (int c = 0, cc = 0; c < 4; ++c) {
      if (c == v) continue;
      m(rr, cc++) = g(r, c);
    }
    ++rr;
  }
  return m.determinant();
}

TetrahedronReport tetrahedron_regime(const TetrahedronAngles& t) {
  TetrahedronReport rep{};
  const Eigen::Matrix4d g = gram_matrix(t);
  rep.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(g, Eigen::EigenvaluesOnly).eigenvalues();
  for (int v = 0; v < 4; ++v) rep.vertex_minors[v] = vertex_minor(g, v);
  rep.singular_angles = {t.alpha - t.eps, t.alpha - t.eps, t.beta - t.eps,
                         t.beta - t.eps,  t.gamma - t.eps, t.gamma - t.eps};

  rep.regime = Regime::Invalid;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      const double d = t.dihedral(u, v);
      if (!(d > 0.0 && d < kPi)) {
        rep.reason = "dihedral angle outside (0, pi)";
        return rep;
      }
    }
  int negative = 0, positive = 0;
  for (int k = 0; k < 4; ++k) {
    if (rep.eigenvalues[k] < -kMinorTolerance) ++negative;
    if (rep.eigenvalues[k] > kMinorTolerance) ++positive;
  }
  if (negative != 1 || positive != 3) {
    rep.reason = "Gram matrix does not have signature (3,1)";
    return rep;
  }
  bool all_ideal = true, all_hyperideal = true;
  for (double m : rep.vertex_minors) {
    all_ideal = all_ideal && std::abs(m) <= kMinorTolerance;
    all_hyperideal = all_hyperideal && m < -kMinorTolerance;
  }
  if (all_ideal) {
    rep.regime = Regime::Ideal;
    rep.reason = "all four vertices ideal";
  } else if (all_hyperideal) {
    rep.regime = Regime::Truncated;
    rep.reason = "all four vertices hyperideal";
  } else {
    rep.reason = "vertices are neither all ideal nor all hyperideal";
  }
  return rep;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Ideal: return "ideal";
    case Regime::Truncated: return "truncated";
    case Regime::Invalid: return "invalid";
  }
  return "unknown";
}

}  // namespace hypcone
