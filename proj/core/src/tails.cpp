#include "dppdisc/tails.hpp"

#include <cmath>
#include <string>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/errors.hpp"
#include "dppdisc/parallel.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/sampler.hpp"

namespace dppdisc {

double bernstein_tail(double variance, double t) {
  if (!(variance >= 0.0)) throw validation_error("variance must be >= 0");
  if (!(t >= 0.0)) throw validation_error("deviation must be >= 0");
  double exponent;
  if (t >= variance) {
    exponent = -t / 4.0;
  } else {
    exponent = -t * t / (4.0 * variance);
  }
  return std::min(1.0, 2.0 * std::exp(exponent));
}

double deviation_threshold(std::int64_t n_points, double m_exponent, double c,
                           double var_sup) {
  if (n_points < 2) throw validation_error("threshold needs N >= 2");
  if (!(c > 0.0) || !(m_exponent > 0.0) || !(var_sup >= 0.0)) {
    throw validation_error("threshold parameters out of range");
  }
  const double s =
      (m_exponent + c) * std::log(static_cast<double>(n_points)) +
      std::log(4.0 * c);
  if (var_sup > 4.0 * s) return 2.0 * std::sqrt(var_sup * s);
  return 4.0 * s;
}

std::vector<TailRow> empirical_tail_check(const EnsembleKernel& kernel,
                                          const Ball& ball, int reps,
                                          std::span<const double> t_grid,
                                          std::uint64_t seed, int workers) {
  if (reps < 1000) {
    throw validation_error("tail frequencies need reps >= 1000");
  }
  if (t_grid.empty()) throw validation_error("empty deviation grid");
  const double mu = static_cast<double>(kernel.trace) *
                    ball_volume(kernel.space, ball.radius);
  std::vector<double> counts(static_cast<std::size_t>(reps));
  parallel_for(counts.size(), workers, [&](std::size_t i) {
    SampleSet s = sample_dpp(kernel, derive_seed(seed, seed_tag::replicate, i));
    counts[i] = count_in_ball(
        kernel.space, std::span<const Point>(s.points.data(), s.points.size()),
        ball);
  });
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= static_cast<double>(reps - 1);

  std::vector<TailRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw validation_error("deviation grid must be >= 0");
    std::size_t exceed = 0;
    for (double c : counts) {
      if (std::abs(c - mu) >= t) ++exceed;
    }
    TailRow row;
    row.t = t;
    row.frequency = static_cast<double>(exceed) / static_cast<double>(reps);
    row.bound = bernstein_tail(var, t);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dppdisc
