#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include "dppdisc/space.hpp"

namespace dppdisc {

enum class EnsembleType { harmonic, projective };

// Projection kernel of a determinantal point process with exactly N points.
//  - harmonic: K(p,q) = c_L * P_L^{(alpha+1,beta)}(cos(2 kappa d(p,q))) on any
//    of the five space kinds, with c_L = (alpha+beta+2)_L / (beta+1)_L and
//    N = eigenspace_dimension. Real-valued.
//  - projective: K(p,q) = N <u_p, u_q>^L on CP^d with N = binom(d+L, d).
//    The value depends on the chosen unit representatives, but any choice
//    changes the Gram matrices only by a diagonal unitary congruence, so
//    every determinantal quantity is representative-free.
struct EnsembleKernel {
  EnsembleType type;
  Space space;
  int level = 0;
  std::int64_t trace = 1;      // number of points, K(x, x)
  double harmonic_coeff = 1.0; // c_L (harmonic kernels only)

  static EnsembleKernel harmonic(const Space& space, int level);
  static EnsembleKernel projective(int d, int level);

  std::string ensemble_name() const {
    return type == EnsembleType::harmonic ? "harmonic" : "projective";
  }
};

// binom(d + L, d), exact in 64-bit arithmetic.
std::int64_t projective_count(int d, int level);

// Signed radial kernel profile at geodesic distance theta. For projective
// kernels this is N cos(theta)^L, the common modulus of all representative
// choices. Works for every space kind, including those without point models.
double kernel_radial(const EnsembleKernel& kernel, double theta);

// Kernel value between two points of the kernel's space.
std::complex<double> kernel_eval(const EnsembleKernel& kernel, const Point& p,
                                 const Point& q);

// Two-point joint intensity N^2 - |K(p,q)|^2. Mathematically nonnegative;
// roundoff-scale negatives (within 1e-8 N^2) are clamped to zero and anything
// below that raises numerical_error.
double joint_intensity_2(const EnsembleKernel& kernel, const Point& p,
                         const Point& q);

// Gram matrix [K(p_i, p_j)]. At most N points (a projection kernel of trace N
// cannot carry more).
Eigen::MatrixXcd gram(const EnsembleKernel& kernel, std::span<const Point> pts);

}  // namespace dppdisc
