#pragma once

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "skyrme/errors.hpp"

namespace skyrme {

struct QuadratureOptions {
  double tol = 1e-12;                ///< error target relative to max(1, L1 norm)
  std::size_t max_refinements = 15;  ///< halvings of the tanh-sinh step
};

/// Double-exponential quadrature on a finite interval.
///
/// `f` is either `double(double x)` or `double(double x, double xc)`. In the
/// two-argument form `xc` is the signed distance to the nearest endpoint:
/// `a - x` (<= 0) on the left half, `b - x` (>= 0) on the right half. It lets
/// integrands with endpoint singularities be written without cancellation.
///
/// Throws ConvergenceError when the error estimate exceeds
/// `opts.tol * max(1, |f|_1)` or the round-off floor of the sum.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: non-finite bounds");
  if (a == b) return 0.0;
  if (b < a) return -integrate(std::forward<F>(f), b, a, opts);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  boost::math::quadrature::tanh_sinh<double> engine(opts.max_refinements);
  double err = 0.0;
  double l1 = 0.0;
  // tanh_sinh stops on a predicted error, which can leave the measured
  // estimate above the request; ask for a margin.
  double value = 0.0;
  try {
    value = engine.integrate(f, a, b, std::max(1e-2 * opts.tol, eps), &err, &l1);
  } catch (const boost::math::evaluation_error& e) {
    throw ConvergenceError(std::string("integrate: ") + e.what());
  }
  // The finite-interval overload rescales L1 but reports the error on [-1, 1].
  err *= 0.5 * (b - a);
  const double target = std::max(opts.tol * std::max(1.0, l1), 64.0 * eps * l1);
  if (!std::isfinite(value) || err > target) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "integrate: error estimate %.3g exceeds tolerance %.3g on [%.17g, %.17g]", err,
                  target, a, b);
    throw ConvergenceError(msg);
  }
  return value;
}

}  // namespace skyrme
