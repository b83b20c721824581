#include "hypcone/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

bool adaptive(const RealFunction& f, double a, double b, double tol, int max_intervals,
              QuadratureResult& out) {
  std::priority_queue<Panel> heap;
  Panel first = kronrod15(f, a, b);
  double value = first.value, error = first.error;
  heap.push(first);
  while (error > tol) {
    if (static_cast<int>(heap.size()) >= max_intervals) return false;
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) return false;
    const Panel left = kronrod15(f, worst.a, mid);
    const Panel right = kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (!std::isfinite(value)) return false;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  out.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  return true;
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b, double abs_tol, int max_intervals) {
  QuadratureResult out;
  if (a == b) return out;
  if (b < a) {
    out = integrate(f, b, a, abs_tol, max_intervals);
    out.value = -out.value;
    return out;
  }
  if (adaptive(f, a, b, abs_tol, max_intervals, out)) return out;

  // Square-root endpoint behaviour: t = a + u² on the left half, t = b − u² on
  // the right half make the integrand smooth in u.
  const double mid = 0.5 * (a + b);
  const double w = std::sqrt(mid - a);
  const RealFunction left = [&](double u) { return 2.0 * u * f(a + u * u); };
  const RealFunction right = [&](double u) { return 2.0 * u * f(b - u * u); };
  QuadratureResult l, r;
  if (!adaptive(left, 0.0, w, 0.5 * abs_tol, max_intervals, l) ||
      !adaptive(right, 0.0, w, 0.5 * abs_tol, max_intervals, r)) {
    throw Error(ErrorKind::QuadratureFailure, "adaptive quadrature exceeded its subdivision budget");
  }
  return {l.value + r.value, l.error + r.error, l.intervals + r.intervals};
}

double integrate_fixed(const RealFunction& f, double a, double b, int panels) {
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    sum += kronrod15(f, lo, k + 1 == panels ? b : lo + width).value;
  }
  return sum;
}

}  // namespace hypcone
