#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypcone/tube.hpp"

namespace hypcone {

/// Finite metric space with a basepoint. Distances are validated on
/// construction: square, symmetric, zero diagonal, positive off the diagonal,
/// triangle inequality up to 1e-9.
class FinitePointedMetricSpace {
 public:
  FinitePointedMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> matrix,
                           int basepoint = 0);
  /// Labels "0", "1", ...
  FinitePointedMetricSpace(std::vector<std::vector<double>> matrix, int basepoint = 0);

  int size() const { return static_cast<int>(d_.size()); }
  int basepoint() const { return base_; }
  double operator()(int i, int j) const { return d_[i][j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& matrix() const { return d_; }

  /// Same labels and basepoint, distances multiplied by lambda > 0.
  FinitePointedMetricSpace scaled(double lambda) const;
  /// Point k of the result is point perm[k] of this space.
  FinitePointedMetricSpace permuted(const std::vector<int>& perm) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> d_;
  int base_;
};

using Relation = std::vector<std::pair<int, int>>;

Relation transpose(const Relation& r);

struct ApproximationVerdict {
  bool ok = true;
  /// First violated condition (1..5) and its witness indices.
  int condition = 0;
  std::vector<int> witness;

  explicit operator bool() const { return ok; }
};

/// The five conditions, with B_X, B_Y the open balls of radius 1/eps about
/// the basepoints:
///  1. x₀ R y for some y with d_Y(y₀, y) < ε;
///  2. x R y₀ for some x with d_X(x₀, x) < ε;
///  3. every x ∈ B_X is related to some y ∈ B_Y;
///  4. every y ∈ B_Y is related to some x ∈ B_X;
///  5. |d_X(x,x′) − d_Y(y,y′)| < ε whenever x R y, x′ R y′ inside B_X × B_Y.
ApproximationVerdict is_eps_approximation(const Relation& r, const FinitePointedMetricSpace& x,
                                          const FinitePointedMetricSpace& y, double eps);

enum class SearchMode { Exact, Heuristic };

struct MinEpsResult {
  double eps;
  /// Whether an ε-approximation exists at exactly `eps` (otherwise only for
  /// every larger value).
  bool attained;
  /// False for heuristic results, which are upper bounds.
  bool exact;
  Relation relation;
};

inline constexpr int kExactRelationBudget = 20;

/// Infimum of the ε admitting an ε-approximation. Exact mode throws
/// BudgetExceeded when |X|·|Y| > 20.
MinEpsResult min_eps(const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y,
                     SearchMode mode = SearchMode::Exact);

/// Some relation that is an ε-approximation, if any exists (|X|·|Y| ≤ 20).
std::optional<Relation> find_eps_approximation(const FinitePointedMetricSpace& x,
                                               const FinitePointedMetricSpace& y, double eps);

struct CoverResult {
  int count;
  bool exact;
  std::vector<int> centers;
};

inline constexpr int kExactCoverBudget = 25;

/// Fewest open eps-balls centred at points of X covering the open ball
/// B_R(x₀). Exact for at most 25 points in the ball, greedy otherwise.
CoverResult covering_number(const FinitePointedMetricSpace& x, double radius, double eps,
                            SearchMode mode = SearchMode::Exact);

/// m×k grid on the flat boundary torus of T, with flat distances (minimum
/// over 5×5 translates of a reduced basis); basepoint is the origin.
FinitePointedMetricSpace sample_tube_boundary(const Tube& t, int m, int k);

}  // namespace hypcone
