#pragma once

#include <cstdint>
#include <optional>

#include "dppdisc/ensemble.hpp"
#include "dppdisc/quadrature.hpp"
#include "dppdisc/space.hpp"

namespace dppdisc {

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;  // normal-theory s.e. of the variance estimate
  int reps = 0;
};

struct PairEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t pairs = 0;
};

// Sample variance of the ball count over independent replicates, with
// std_error = variance * sqrt(2 / (reps - 1)).
MomentEstimate variance_empirical(const EnsembleKernel& kernel,
                                  const Ball& ball, int reps,
                                  std::uint64_t seed, int workers = 1);

// Monte Carlo evaluation of Var(N_A) = integral over A x A^c of |K(p,q)|^2:
// p is drawn uniformly in A and q uniformly in A^c by rejection, and the mean
// of |K|^2 is scaled by vol(A)(1 - vol(A)). Requires 0 < vol(A) < 1.
PairEstimate variance_exact_mc(const EnsembleKernel& kernel, const Ball& ball,
                               std::int64_t pairs, std::uint64_t seed,
                               int workers = 1);

// Closed quadrature upper bound for the harmonic ensemble variance of a ball
// count at radius r: the squared kernel is bounded radially and integrated
// over the two-radius wedge 0 <= phi <= kappa r, kappa r - phi <= theta <= pi/2
// with the radial density in both variables.
double variance_bound_harmonic(const Space& space, int level, double r,
                               const QuadratureOptions& opts = {});

// The wedge integral of the squared, weight-stripped Jacobi factor
//   J(theta) = P_L^{(alpha+1,beta)}(cos 2 theta)^2 sin(theta)^{2alpha+1}
//              cos(theta)^{2beta+1}
// split into its four asymptotic regions (phi-width reduced to 1-D form):
//   r1: theta in [pi/2 - 1/L, pi/2], full phi-width a
//   r2: theta in [1/L, pi/2 - 1/L], phi-width min(theta, a) - 1/L
//   r3: theta in [1/L, pi/2 - 1/L], phi-width 1/L
//   r4: theta in [0, 1/L], phi-width theta
// The split needs 1/L < a < pi/2 - 1/L; otherwise only `undivided` is valid
// and `valid_subdivision` is false.
struct RegionIntegrals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
  double undivided = 0.0;
  bool valid_subdivision = false;
};

RegionIntegrals variance_region_integrals(const Space& space, int level,
                                          double r);

// Quadrature upper bound for the projective ensemble on CP^d:
//   4 d^2 N^2 * integral over the wedge of
//   sin(phi)^{2d-1} cos(phi) sin(theta)^{2d-1} cos(theta)^{2L+1}.
double variance_bound_projective(int d, int level, double r,
                                 const QuadratureOptions& opts = {});

namespace detail {
// Integrand of the projective bound; exposed for direct inspection in tests.
double projective_variance_integrand(int d, int level, double phi, double theta);
}  // namespace detail

}  // namespace dppdisc
