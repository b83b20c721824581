#include "hypcone/gh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {

constexpr double kTriangleSlack = 1e-9;

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

std::vector<int> open_ball(const FinitePointedMetricSpace& s, double radius) {
  std::vector<int> ball;
  for (int i = 0; i < s.size(); ++i)
    if (s(s.basepoint(), i) < radius) ball.push_back(i);
  return ball;
}

// ε-independent part of the exact search: which pairs of X × Y sit inside the
// balls, and which of those are mutually compatible.
struct PairGraph {
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::uint32_t> compatible;  // adjacency, bit per pair index
};

PairGraph build_graph(const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y,
                      const std::vector<int>& bx, const std::vector<int>& by, double eps) {
  PairGraph g;
  for (int a : bx)
    for (int b : by) g.pairs.emplace_back(a, b);
  const std::size_t n = g.pairs.size();
  g.compatible.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const auto [x1, y1] = g.pairs[p];
      const auto [x2, y2] = g.pairs[q];
      if (std::abs(x(x1, x2) - y(y1, y2)) < eps) g.compatible[p] |= std::uint32_t{1} << q;
    }
  return g;
}

// Bron–Kerbosch with pivoting; `visit` returns true to stop.
bool maximal_cliques(const PairGraph& g, std::uint32_t r, std::uint32_t p, std::uint32_t x,
                     const std::function<bool(std::uint32_t)>& visit) {
  if (p == 0 && x == 0) return visit(r);
  const std::uint32_t px = p | x;
  const int pivot = std::countr_zero(px);
  // Every pair is compatible with itself, so drop the pivot from its own
  // neighbourhood.
  std::uint32_t candidates = p & ~(g.compatible[pivot] & ~(std::uint32_t{1} << pivot));
  while (candidates) {
    const int v = std::countr_zero(candidates);
    const std::uint32_t bit = std::uint32_t{1} << v;
    const std::uint32_t nbr = g.compatible[v] & ~bit;
    if (maximal_cliques(g, r | bit, p & nbr, x & nbr, visit)) return true;
    p &= ~bit;
    x |= bit;
    candidates &= ~bit;
  }
  return false;
}

double relation_breakpoint_scan(const std::vector<double>& critical,
                                const std::function<bool(double)>& exists, bool& attained) {
  // Verdicts are constant between consecutive critical values.
  if (critical.empty() || exists(critical.front() / 2)) {
    attained = false;
    return 0.0;
  }
  for (std::size_t k = 0; k < critical.size(); ++k) {
    if (exists(critical[k])) {
      attained = true;
      return critical[k];
    }
    const double next = k + 1 < critical.size() ? 0.5 * (critical[k] + critical[k + 1]) : 2.0 * critical[k];
    if (exists(next)) {
      attained = false;
      return critical[k];
    }
  }
  attained = false;
  return std::numeric_limits<double>::infinity();
}

std::vector<double> critical_values(const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y) {
  std::set<double> c;
  auto add_distance = [&](double d) {
    if (d > 0.0) {
      c.insert(d);
      c.insert(1.0 / d);
    }
  };
  for (int i = 0; i < x.size(); ++i) add_distance(x(x.basepoint(), i));
  for (int j = 0; j < y.size(); ++j) add_distance(y(y.basepoint(), j));
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      for (int p = 0; p < y.size(); ++p)
        for (int q = 0; q < y.size(); ++q) {
          const double diff = std::abs(x(a, b) - y(p, q));
          if (diff > 0.0) c.insert(diff);
        }
  return {c.begin(), c.end()};
}

}  // namespace

FinitePointedMetricSpace::FinitePointedMetricSpace(std::vector<std::string> labels,
                                                   std::vector<std::vector<double>> matrix, int basepoint)
    : labels_(std::move(labels)), d_(std::move(matrix)), base_(basepoint) {
  const int n = static_cast<int>(d_.size());
  if (n == 0) throw Error(ErrorKind::InvalidInput, "metric space is empty", "matrix");
  if (static_cast<int>(labels_.size()) != n) throw Error(ErrorKind::InvalidInput, "one label per point", "labels");
  for (const auto& row : d_)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidInput, "distance matrix is not square", "matrix");
  if (base_ < 0 || base_ >= n) throw Error(ErrorKind::InvalidInput, "basepoint out of range", "basepoint");
  for (int i = 0; i < n; ++i) {
    if (d_[i][i] != 0.0) throw Error(ErrorKind::InvalidInput, "diagonal must be zero", "matrix");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(d_[i][j])) throw Error(ErrorKind::InvalidInput, "distances must be finite", "matrix");
      if (d_[i][j] != d_[j][i]) throw Error(ErrorKind::InvalidInput, "distance matrix is not symmetric", "matrix");
      if (i != j && !(d_[i][j] > 0.0)) throw Error(ErrorKind::InvalidInput, "distinct points need positive distance", "matrix");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (d_[i][k] > d_[i][j] + d_[j][k] + kTriangleSlack) {
          throw Error(ErrorKind::InvalidInput, "triangle inequality fails", "matrix");
        }
}

FinitePointedMetricSpace::FinitePointedMetricSpace(std::vector<std::vector<double>> matrix, int basepoint)
    : FinitePointedMetricSpace(index_labels(matrix.size()), matrix, basepoint) {}

FinitePointedMetricSpace FinitePointedMetricSpace::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidInput, "scale must be positive", "lambda");
  auto m = d_;
  for (auto& row : m)
    for (double& v : row) v *= lambda;
  return FinitePointedMetricSpace(labels_, std::move(m), base_);
}

FinitePointedMetricSpace FinitePointedMetricSpace::permuted(const std::vector<int>& perm) const {
  const int n = size();
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorKind::InvalidInput, "permutation size mismatch", "perm");
  std::vector<int> inverse(n, -1);
  for (int k = 0; k < n; ++k) {
    if (perm[k] < 0 || perm[k] >= n || inverse[perm[k]] != -1) throw Error(ErrorKind::InvalidInput, "not a permutation", "perm");
    inverse[perm[k]] = k;
  }
  std::vector<std::string> labels(n);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (int a = 0; a < n; ++a) {
    labels[a] = labels_[perm[a]];
    for (int b = 0; b < n; ++b) m[a][b] = d_[perm[a]][perm[b]];
  }
  return FinitePointedMetricSpace(std::move(labels), std::move(m), inverse[base_]);
}

Relation transpose(const Relation& r) {
  Relation t;
  t.reserve(r.size());
  for (const auto& [a, b] : r) t.emplace_back(b, a);
  return t;
}

ApproximationVerdict is_eps_approximation(const Relation& r, const FinitePointedMetricSpace& x,
                                          const FinitePointedMetricSpace& y, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps must be positive", "eps");
  for (const auto& [a, b] : r) {
    if (a < 0 || a >= x.size() || b < 0 || b >= y.size()) {
      throw Error(ErrorKind::InvalidInput, "relation index out of range", "relation");
    }
  }
  const int x0 = x.basepoint(), y0 = y.basepoint();
  const double radius = 1.0 / eps;
  auto in_x = [&](int a) { return x(x0, a) < radius; };
  auto in_y = [&](int b) { return y(y0, b) < radius; };

  ApproximationVerdict v;
  auto fail = [&](int condition, std::vector<int> witness) {
    v.ok = false;
    v.condition = condition;
    v.witness = std::move(witness);
    return v;
  };

  if (std::none_of(r.begin(), r.end(), [&](auto p) { return p.first == x0 && y(y0, p.second) < eps; })) {
    return fail(1, {x0});
  }
  if (std::none_of(r.begin(), r.end(), [&](auto p) { return p.second == y0 && x(x0, p.first) < eps; })) {
    return fail(2, {y0});
  }
  Relation inside;
  for (const auto& p : r)
    if (in_x(p.first) && in_y(p.second)) inside.push_back(p);
  for (int a = 0; a < x.size(); ++a) {
    if (in_x(a) && std::none_of(inside.begin(), inside.end(), [&](auto p) { return p.first == a; })) {
      return fail(3, {a});
    }
  }
  for (int b = 0; b < y.size(); ++b) {
    if (in_y(b) && std::none_of(inside.begin(), inside.end(), [&](auto p) { return p.second == b; })) {
      return fail(4, {b});
    }
  }
  for (const auto& [a, b] : inside)
    for (const auto& [c, d] : inside)
      if (!(std::abs(x(a, c) - y(b, d)) < eps)) return fail(5, {a, b, c, d});
  return v;
}

std::optional<Relation> find_eps_approximation(const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y,
                                               double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps must be positive", "eps");
  if (x.size() * y.size() > kExactRelationBudget) {
    throw Error(ErrorKind::BudgetExceeded, "exact search needs |X|*|Y| <= 20");
  }
  const int x0 = x.basepoint(), y0 = y.basepoint();
  const double radius = 1.0 / eps;
  const std::vector<int> bx = open_ball(x, radius), by = open_ball(y, radius);

  // Conditions 1 and 2 can be met by a pair that leaves the balls, where it
  // is unconstrained.
  std::optional<int> outside_y, outside_x;
  for (int b = 0; b < y.size(); ++b)
    if (y(y0, b) < eps && !(y(y0, b) < radius)) outside_y = b;
  for (int a = 0; a < x.size(); ++a)
    if (x(x0, a) < eps && !(x(x0, a) < radius)) outside_x = a;

  const PairGraph g = build_graph(x, y, bx, by, eps);
  const std::uint32_t all = g.pairs.size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << g.pairs.size()) - 1;
  std::optional<Relation> found;
  auto visit = [&](std::uint32_t clique) {
    bool cond1 = outside_y.has_value(), cond2 = outside_x.has_value();
    std::vector<bool> cover_x(x.size()), cover_y(y.size());
    Relation rel;
    for (std::uint32_t bits = clique; bits; bits &= bits - 1) {
      const auto [a, b] = g.pairs[std::countr_zero(bits)];
      rel.emplace_back(a, b);
      cover_x[a] = cover_y[b] = true;
      if (a == x0 && y(y0, b) < eps) cond1 = true;
      if (b == y0 && x(x0, a) < eps) cond2 = true;
    }
    if (!cond1 || !cond2) return false;
    for (int a : bx)
      if (!cover_x[a]) return false;
    for (int b : by)
      if (!cover_y[b]) return false;
    if (!std::any_of(rel.begin(), rel.end(), [&](auto p) { return p.first == x0 && y(y0, p.second) < eps; })) {
      rel.emplace_back(x0, *outside_y);
    }
    if (!std::any_of(rel.begin(), rel.end(), [&](auto p) { return p.second == y0 && x(x0, p.first) < eps; })) {
      rel.emplace_back(*outside_x, y0);
    }
    found = std::move(rel);
    return true;
  };
  maximal_cliques(g, 0, all, 0, visit);
  return found;
}

MinEpsResult min_eps(const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y, SearchMode mode) {
  const std::vector<double> critical = critical_values(x, y);
  MinEpsResult out{};
  if (mode == SearchMode::Exact) {
    if (x.size() * y.size() > kExactRelationBudget) {
      throw Error(ErrorKind::BudgetExceeded, "exact search needs |X|*|Y| <= 20");
    }
    std::optional<Relation> last;
    auto exists = [&](double eps) {
      last = find_eps_approximation(x, y, eps);
      return last.has_value();
    };
    out.eps = relation_breakpoint_scan(critical, exists, out.attained);
    out.exact = true;
    if (last) out.relation = *last;
    return out;
  }

  // Greedy: pair every point with its best match by distance to the basepoint.
  Relation r{{x.basepoint(), y.basepoint()}};
  for (int a = 0; a < x.size(); ++a) {
    int best = 0;
    for (int b = 1; b < y.size(); ++b)
      if (std::abs(x(x.basepoint(), a) - y(y.basepoint(), b)) < std::abs(x(x.basepoint(), a) - y(y.basepoint(), best)))
        best = b;
    r.emplace_back(a, best);
  }
  for (int b = 0; b < y.size(); ++b) {
    int best = 0;
    for (int a = 1; a < x.size(); ++a)
      if (std::abs(y(y.basepoint(), b) - x(x.basepoint(), a)) < std::abs(y(y.basepoint(), b) - x(x.basepoint(), best)))
        best = a;
    r.emplace_back(best, b);
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  auto works = [&](double eps) { return static_cast<bool>(is_eps_approximation(r, x, y, eps)); };
  out.eps = relation_breakpoint_scan(critical, works, out.attained);
  out.exact = false;
  out.relation = r;
  return out;
}

CoverResult covering_number(const FinitePointedMetricSpace& x, double radius, double eps, SearchMode mode) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidInput, "R must be positive", "r");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps must be positive", "eps");
  const std::vector<int> ball = open_ball(x, radius);
  const int m = static_cast<int>(ball.size());
  const int n = x.size();

  if (mode == SearchMode::Exact && m <= kExactCoverBudget) {
    std::vector<std::uint32_t> covers(n, 0);
    for (int c = 0; c < n; ++c)
      for (int k = 0; k < m; ++k)
        if (x(c, ball[k]) < eps) covers[c] |= std::uint32_t{1} << k;
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    std::vector<int> best, current;
    int best_count = m + 1;
    std::function<void(std::uint32_t)> search = [&](std::uint32_t covered) {
      if (covered == full) {
        if (static_cast<int>(current.size()) < best_count) {
          best_count = static_cast<int>(current.size());
          best = current;
        }
        return;
      }
      if (static_cast<int>(current.size()) + 1 >= best_count) return;
      const int target = std::countr_zero(~covered & full);
      std::vector<int> options;
      for (int c = 0; c < n; ++c)
        if (covers[c] >> target & 1u) options.push_back(c);
      std::sort(options.begin(), options.end(), [&](int p, int q) {
        return std::popcount(covers[p] & ~covered) > std::popcount(covers[q] & ~covered);
      });
      for (int c : options) {
        current.push_back(c);
        search(covered | covers[c]);
        current.pop_back();
      }
    };
    search(0);
    return {best_count, true, best};
  }

  std::vector<bool> covered(m, false);
  std::vector<int> centers;
  int remaining = m;
  while (remaining > 0) {
    int best = -1, best_gain = 0;
    for (int c = 0; c < n; ++c) {
      int gain = 0;
      for (int k = 0; k < m; ++k)
        if (!covered[k] && x(c, ball[k]) < eps) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    centers.push_back(best);
    for (int k = 0; k < m; ++k)
      if (!covered[k] && x(best, ball[k]) < eps) {
        covered[k] = true;
        --remaining;
      }
  }
  return {static_cast<int>(centers.size()), false, centers};
}

FinitePointedMetricSpace sample_tube_boundary(const Tube& t, int m, int k) {
  if (m < 2 || k < 2) throw Error(ErrorKind::InvalidInput, "grid sizes must be at least 2", m < 2 ? "m" : "k");
  const FlatTorus torus = boundary_torus(t);
  const auto [u, v] = reduced_basis(torus);
  std::vector<Complex> points;
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < k; ++b) {
      points.push_back(torus.meridian() * (static_cast<double>(a) / m) +
                       torus.longitude() * (static_cast<double>(b) / k));
      labels.push_back(std::to_string(a) + "," + std::to_string(b));
    }
  const std::size_t n = points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      double best = std::numeric_limits<double>::infinity();
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
          best = std::min(best, std::abs(points[p] - points[q] + static_cast<double>(i) * u + static_cast<double>(j) * v));
      d[p][q] = d[q][p] = best;
    }
  return FinitePointedMetricSpace(std::move(labels), std::move(d), 0);
}

}  // namespace hypcone
