#include "dppdisc/special_functions.hpp"

#include <cmath>
#include <string>

#include "dppdisc/errors.hpp"

namespace dppdisc {

double pochhammer(double a, int n) {
  if (n < 0) throw validation_error("pochhammer order must be >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double pochhammer_ratio(double num, double den, int n) {
  if (n < 0) throw validation_error("pochhammer order must be >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= (num + k) / (den + k);
  return p;
}

double jacobi_eval(double a, double b, int degree, double x) {
  if (!(a > -1.0) || !(b > -1.0)) {
    throw validation_error("jacobi parameters must exceed -1");
  }
  if (degree < 0) throw validation_error("jacobi degree must be >= 0");
  if (!(x >= -1.0 && x <= 1.0)) {
    throw validation_error("jacobi argument outside [-1, 1]");
  }
  if (degree == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * ((a - b) + (a + b + 2.0) * x);
  for (int n = 2; n <= degree; ++n) {
    const double s = 2.0 * n + a + b;
    const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double pn = (c2 * p - c3 * pm1) / c1;
    pm1 = p;
    p = pn;
  }
  return p;
}

std::int64_t eigenspace_dimension(const Space& space, int level) {
  if (level < 0) throw validation_error("level must be >= 0");
  const double a = space.alpha, b = space.beta;
  double value = 1.0;
  for (int k = 1; k <= level; ++k) {
    value *= ((a + b + 1.0 + k) * (a + 1.0 + k)) / ((b + k) * k);
  }
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-6 * std::max(1.0, std::abs(value))) {
    throw numerical_error("eigenspace dimension for '" + space.id + "', L=" +
                          std::to_string(level) +
                          " did not round cleanly: " + std::to_string(value));
  }
  if (rounded > 9.2e18) {
    throw numerical_error("eigenspace dimension overflows 64-bit range");
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace dppdisc
