#include "dppdisc/ensemble.hpp"

#include <cmath>
#include <string>

#include "dppdisc/errors.hpp"
#include "dppdisc/special_functions.hpp"

namespace dppdisc {

EnsembleKernel EnsembleKernel::harmonic(const Space& space, int level) {
  if (level < 0) throw validation_error("level must be >= 0");
  EnsembleKernel k;
  k.type = EnsembleType::harmonic;
  k.space = space;
  k.level = level;
  k.trace = eigenspace_dimension(space, level);
  k.harmonic_coeff =
      pochhammer_ratio(space.alpha + space.beta + 2.0, space.beta + 1.0, level);
  return k;
}

EnsembleKernel EnsembleKernel::projective(int d, int level) {
  if (level < 0) throw validation_error("level must be >= 0");
  EnsembleKernel k;
  k.type = EnsembleType::projective;
  k.space = Space::complex_projective(d);
  k.level = level;
  k.trace = projective_count(d, level);
  return k;
}

std::int64_t projective_count(int d, int level) {
  if (d < 1) throw validation_error("projective index must be >= 1");
  if (level < 0) throw validation_error("level must be >= 0");
  // binom(d + L, d) = prod_{k=1}^{d} (L + k) / k, accumulated to stay integral
  // at each step.
  std::int64_t c = 1;
  for (int k = 1; k <= d; ++k) {
    const std::int64_t num = static_cast<std::int64_t>(level) + k;
    if (c > (static_cast<std::int64_t>(9.2e18)) / num) {
      throw numerical_error("projective count overflows 64-bit range");
    }
    c = c * num / k;
  }
  return c;
}

double kernel_radial(const EnsembleKernel& kernel, double theta) {
  const Space& sp = kernel.space;
  if (!(theta >= 0.0) || theta > sp.diameter + 1e-12) {
    throw validation_error("distance outside [0, diameter]");
  }
  theta = std::min(theta, sp.diameter);
  if (kernel.type == EnsembleType::projective) {
    return static_cast<double>(kernel.trace) *
           std::pow(std::cos(theta), kernel.level);
  }
  const double x = std::clamp(std::cos(2.0 * sp.kappa * theta), -1.0, 1.0);
  return kernel.harmonic_coeff *
         jacobi_eval(sp.alpha + 1.0, sp.beta, kernel.level, x);
}

std::complex<double> kernel_eval(const EnsembleKernel& kernel, const Point& p,
                                 const Point& q) {
  const Space& sp = kernel.space;
  if (p.coords.size() != sp.coord_size() || q.coords.size() != sp.coord_size()) {
    throw validation_error("point layout does not match kernel space '" +
                           sp.id + "'");
  }
  if (kernel.type == EnsembleType::harmonic) {
    return {kernel_radial(kernel, distance(sp, p, q)), 0.0};
  }
  std::complex<double> z = hermitian_inner(sp, p.coords, q.coords);
  const double m = std::abs(z);
  if (m > 1.0) z /= m;
  std::complex<double> pw{1.0, 0.0};
  std::complex<double> base = z;
  for (int e = kernel.level; e > 0; e >>= 1) {
    if (e & 1) pw *= base;
    base *= base;
  }
  return static_cast<double>(kernel.trace) * pw;
}

double joint_intensity_2(const EnsembleKernel& kernel, const Point& p,
                         const Point& q) {
  const double n = static_cast<double>(kernel.trace);
  const double k2 = std::norm(kernel_eval(kernel, p, q));
  const double rho = n * n - k2;
  if (rho < -1e-8 * n * n) {
    throw numerical_error("two-point intensity below roundoff floor: " +
                          std::to_string(rho));
  }
  return std::max(rho, 0.0);
}

Eigen::MatrixXcd gram(const EnsembleKernel& kernel, std::span<const Point> pts) {
  const auto m = static_cast<Eigen::Index>(pts.size());
  if (m > kernel.trace) {
    throw validation_error("a projection kernel of trace " +
                           std::to_string(kernel.trace) + " admits at most " +
                           std::to_string(kernel.trace) + " points");
  }
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g(i, i) = static_cast<double>(kernel.trace);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const std::complex<double> v = kernel_eval(kernel, pts[i], pts[j]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

}  // namespace dppdisc
