#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "dppdisc/errors.hpp"

namespace dppdisc {

struct QuadratureOptions {
  double inner_tol = 1e-9;   // absolute tolerance for the inner integral
  double outer_tol = 1e-8;   // absolute tolerance for the outer integral
  int max_depth = 40;
};

namespace detail {

// Adaptive Simpson with Richardson correction. `tol` is an absolute error
// budget for the current interval; it is split evenly between halves.
// A subinterval that still misses its budget at max_depth contributes its
// best estimate and clears *converged.
template <class F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth,
                       bool* converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h6 = (b - a) / 12.0;
  const double left = h6 * (fa + 4.0 * flm + fm);
  const double right = h6 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    if (converged) *converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, converged) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, converged);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance abs_tol. When `converged`
// is non-null it is set to false (never to true) if some subinterval hit the
// depth limit before meeting its budget; callers that require a certified
// result should initialize it to true and check it afterwards.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol,
                        int max_depth = 40, bool* converged = nullptr) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, max_depth,
                                 converged);
}

// Nested adaptive quadrature of f(x, y) over the region
//   x in [x_lo, x_hi],  y in [y_lo(x), y_hi(x)].
// Throws numerical_error if either level fails to converge.
template <class F, class Lo, class Hi>
double adaptive_simpson_2d(const F& f, double x_lo, double x_hi, Lo y_lo,
                           Hi y_hi, const QuadratureOptions& opts,
                           const std::string& label) {
  bool ok = true;
  auto outer = [&](double x) {
    auto slice = [&](double y) { return f(x, y); };
    return adaptive_simpson(slice, y_lo(x), y_hi(x), opts.inner_tol,
                            opts.max_depth, &ok);
  };
  const double value =
      adaptive_simpson(outer, x_lo, x_hi, opts.outer_tol, opts.max_depth, &ok);
  if (!ok) {
    throw numerical_error("quadrature failed to converge (" + label +
                          "): inner_tol=" + std::to_string(opts.inner_tol) +
                          " outer_tol=" + std::to_string(opts.outer_tol) +
                          " value~" + std::to_string(value));
  }
  return value;
}

}  // namespace dppdisc
