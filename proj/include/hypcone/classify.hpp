#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hypcone {

/// Closed surface of Euler characteristic `chi` with cone points of the given
/// angles, each in (0, 2π].
struct ConeSurface {
  int chi;
  std::vector<double> angles;

  ConeSurface(int chi, std::vector<double> angles);
};

/// 2πχ − Σ(2π − ν_i). Zero exactly when a euclidean cone metric exists.
double gauss_bonnet_defect(const ConeSurface& s);

inline constexpr double kFlatTolerance = 1e-12;

enum class FlatConeSphere { FourPiSphere, TripleSphere, NotFlatOrAngleTooBig };

struct SurfaceVerdict {
  FlatConeSphere kind;
  double defect;
};

/// Throws AngleAbovePi if some angle exceeds π.
SurfaceVerdict classify_flat_le_pi(const ConeSurface& s);

std::string_view to_string(FlatConeSphere k);

/// Tetrahedron with dihedral angles (α−ε)/2, (β−ε)/2, (γ−ε)/2 on three pairs
/// of opposite edges, α + β + γ = 2π.
struct TetrahedronAngles {
  double alpha, beta, gamma, eps;

  /// Checks α, β, γ ∈ (0, π) and the angle sum. ε is unrestricted here so
  /// that regimes on both sides of 0 can be probed.
  TetrahedronAngles(double alpha, double beta, double gamma, double eps);

  /// Dihedral angle at the edge between faces u and v (0-based, u ≠ v).
  double dihedral(int u, int v) const;
};

/// Faces 0..3. Edges {01, 23} carry α, {02, 13} carry β, {03, 12} carry γ.
/// G_uu = 1, G_uv = −cos(dihedral), signature (3, 1) for a hyperbolic one.
Eigen::Matrix4d gram_matrix(const TetrahedronAngles& t);

/// Determinant of the 3×3 principal minor obtained by deleting face `v`,
/// i.e. the Gram matrix of the three faces at vertex v:
/// > 0 finite, = 0 ideal, < 0 hyperideal.
double vertex_minor(const Eigen::Matrix4d& g, int v);

enum class Regime { Ideal, Truncated, Invalid };

struct TetrahedronReport {
  Regime regime;
  std::string reason;
  std::array<double, 4> vertex_minors;
  Eigen::Vector4d eigenvalues;
  /// Cone angles of the six singular circles of the doubled manifold.
  std::array<double, 6> singular_angles;
};

inline constexpr double kMinorTolerance = 1e-12;

TetrahedronReport tetrahedron_regime(const TetrahedronAngles& t);

std::string_view to_string(Regime r);

}  // namespace hypcone
