#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dppdisc/ensemble.hpp"
#include "dppdisc/space.hpp"

namespace dppdisc {

// Bernstein-type tail bound for a ball count with variance `variance`:
//   P(|N_A - E N_A| >= t) <= 2 exp(-t/4)            if t >= variance,
//                            2 exp(-t^2/(4 var))    otherwise,
// capped at 1. Continuous across the branch point.
double bernstein_tail(double variance, double t);

// Deviation threshold t(N) that makes a union bound over ~4c n^c balls come
// out at N^{-M}: with S = (M + c) log N + log(4c),
//   t = 2 sqrt(var_sup * S)  if var_sup > 4 S   (Gaussian branch),
//   t = 4 S                  otherwise           (exponential branch).
double deviation_threshold(std::int64_t n_points, double m_exponent, double c,
                           double var_sup);

struct TailRow {
  double t = 0.0;
  double frequency = 0.0;  // empirical P(|count - N vol| >= t)
  double bound = 0.0;      // bernstein_tail at the empirical variance
};

// Draws `reps` replicates, centers the ball count at its exact mean N vol(A),
// and tabulates exceedance frequencies against the bound evaluated at the
// empirical variance.
std::vector<TailRow> empirical_tail_check(const EnsembleKernel& kernel,
                                          const Ball& ball, int reps,
                                          std::span<const double> t_grid,
                                          std::uint64_t seed, int workers = 1);

}  // namespace dppdisc
