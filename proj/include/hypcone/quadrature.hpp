#pragma once

#include <functional>

namespace hypcone {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int intervals = 0;
};

/// Globally adaptive Gauss–Kronrod (7/15) integration to an absolute
/// tolerance. When subdivision exhausts `max_intervals` (typically at a
/// square-root endpoint) the halves are retried under t = a + u², t = b − u².
/// Throws QuadratureFailure if that also fails.
QuadratureResult integrate(const RealFunction& f, double a, double b, double abs_tol = 1e-10,
                           int max_intervals = 4000);

/// Composite 15-point Kronrod rule on `panels` equal panels; deterministic
/// node layout, so the result is a smooth function of the endpoints.
double integrate_fixed(const RealFunction& f, double a, double b, int panels);

}  // namespace hypcone
