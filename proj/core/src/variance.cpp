#include "dppdisc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/errors.hpp"
#include "dppdisc/parallel.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/sampler.hpp"
#include "dppdisc/special_functions.hpp"

namespace dppdisc {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double unbiased_variance(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

MomentEstimate variance_empirical(const EnsembleKernel& kernel,
                                  const Ball& ball, int reps,
                                  std::uint64_t seed, int workers) {
  if (reps < 2) throw validation_error("empirical variance needs reps >= 2");
  std::vector<double> counts(static_cast<std::size_t>(reps));
  parallel_for(counts.size(), workers, [&](std::size_t i) {
    SampleSet s = sample_dpp(kernel, derive_seed(seed, seed_tag::replicate, i));
    counts[i] = count_in_ball(
        kernel.space, std::span<const Point>(s.points.data(), s.points.size()),
        ball);
  });
  MomentEstimate est;
  est.reps = reps;
  est.mean = mean_of(counts);
  est.variance = unbiased_variance(counts, est.mean);
  est.std_error = est.variance * std::sqrt(2.0 / (reps - 1));
  return est;
}

PairEstimate variance_exact_mc(const EnsembleKernel& kernel, const Ball& ball,
                               std::int64_t pairs, std::uint64_t seed,
                               int workers) {
  if (pairs < 2) throw validation_error("pair estimate needs pairs >= 2");
  const Space& sp = kernel.space;
  const double vol = ball_volume(sp, ball.radius);
  if (!(vol > 0.0) || !(vol < 1.0)) {
    throw validation_error("ball volume " + std::to_string(vol) +
                           " is degenerate; the split integral needs 0 < vol < 1");
  }
  // Pairs are generated in fixed chunks, each from its own substream, so the
  // stream of |K|^2 values is independent of the worker count.
  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (pairs + kChunk - 1) / kChunk;
  std::vector<double> values(static_cast<std::size_t>(pairs));
  parallel_for(static_cast<std::size_t>(chunks), workers, [&](std::size_t ch) {
    RandomStream rng(derive_seed(seed, seed_tag::pair_chunk, ch));
    const std::int64_t lo = static_cast<std::int64_t>(ch) * kChunk;
    const std::int64_t hi = std::min(lo + kChunk, pairs);
    for (std::int64_t i = lo; i < hi; ++i) {
      const Point p = sample_in_ball_rejection(sp, ball, rng);
      Point q = sample_uniform(sp, rng);
      std::uint64_t attempts = 0;
      while (distance(sp, q, ball.center) < ball.radius) {
        if (++attempts > 1000000) {
          throw numerical_error("complement sampling exhausted its budget");
        }
        q = sample_uniform(sp, rng);
      }
      values[static_cast<std::size_t>(i)] = std::norm(kernel_eval(kernel, p, q));
    }
  });
  const double mean = mean_of(values);
  const double var = unbiased_variance(values, mean);
  PairEstimate est;
  est.pairs = pairs;
  est.value = vol * (1.0 - vol) * mean;
  est.std_error =
      vol * (1.0 - vol) * std::sqrt(var / static_cast<double>(pairs));
  return est;
}

namespace {

// J(theta): squared degree-L Jacobi factor with the radial weight of the
// space, the common integrand of the harmonic-variance wedge.
struct JacobiWeight {
  double a, b;
  int level;
  double operator()(double theta) const {
    const double x = std::clamp(std::cos(2.0 * theta), -1.0, 1.0);
    const double p = jacobi_eval(a + 1.0, b, level, x);
    return p * p * std::pow(std::sin(theta), 2.0 * a + 1.0) *
           std::pow(std::cos(theta), 2.0 * b + 1.0);
  }
};

}  // namespace

double variance_bound_harmonic(const Space& space, int level, double r,
                               const QuadratureOptions& opts) {
  if (level < 1) throw validation_error("harmonic bound needs level >= 1");
  if (!(r > 0.0) || !(r < space.diameter)) {
    throw validation_error("radius must lie strictly inside (0, diameter)");
  }
  const double a_par = space.alpha, b_par = space.beta;
  const double a = space.kappa * r;
  const JacobiWeight jac{a_par, b_par, level};
  const double weight_norm =
      2.0 * std::exp(std::lgamma(a_par + b_par + 2.0) -
                     std::lgamma(a_par + 1.0) - std::lgamma(b_par + 1.0));
  const double coeff =
      pochhammer_ratio(a_par + b_par + 2.0, b_par + 1.0, level) * weight_norm;
  auto f = [&](double phi, double theta) {
    return jac(theta) * std::pow(std::sin(phi), 2.0 * a_par + 1.0) *
           std::pow(std::cos(phi), 2.0 * b_par + 1.0);
  };
  const double wedge = adaptive_simpson_2d(
      f, 0.0, a, [&](double phi) { return a - phi; },
      [](double) { return kHalfPi; }, opts, "harmonic variance bound");
  return coeff * coeff * wedge;
}

RegionIntegrals variance_region_integrals(const Space& space, int level,
                                          double r) {
  if (level < 1) throw validation_error("region split needs level >= 1");
  if (!(r > 0.0) || !(r < space.diameter)) {
    throw validation_error("radius must lie strictly inside (0, diameter)");
  }
  const double a = space.kappa * r;
  const double inv_l = 1.0 / level;
  const JacobiWeight jac{space.alpha, space.beta, level};
  constexpr double kTol = 1e-12;
  constexpr int kDepth = 44;

  bool ok = true;
  auto integrate = [&](auto&& f, double lo, double hi) {
    return adaptive_simpson(f, lo, hi, kTol, kDepth, &ok);
  };

  RegionIntegrals out;
  // Undivided wedge, Fubini-reduced: width of the phi-interval at height
  // theta is min(theta, a). Split at the kink for the quadrature's sake.
  {
    auto lower = [&](double th) { return jac(th) * th; };
    auto upper = [&](double th) { return jac(th); };
    out.undivided = integrate(lower, 0.0, std::min(a, kHalfPi)) +
                    a * integrate(upper, std::min(a, kHalfPi), kHalfPi);
  }

  out.valid_subdivision = (a > inv_l) && (a < kHalfPi - inv_l);
  if (out.valid_subdivision) {
    auto j_only = [&](double th) { return jac(th); };
    out.r1 = a * integrate(j_only, kHalfPi - inv_l, kHalfPi);
    auto width2_lower = [&](double th) { return jac(th) * (th - inv_l); };
    auto width2_upper = [&](double th) { return jac(th) * (a - inv_l); };
    out.r2 = integrate(width2_lower, inv_l, a) +
             integrate(width2_upper, a, kHalfPi - inv_l);
    out.r3 = inv_l * integrate(j_only, inv_l, kHalfPi - inv_l);
    auto width4 = [&](double th) { return jac(th) * th; };
    out.r4 = integrate(width4, 0.0, inv_l);
  }
  if (!ok) {
    throw numerical_error("region quadrature failed to converge at tol 1e-12");
  }
  return out;
}

namespace detail {
double projective_variance_integrand(int d, int level, double phi,
                                     double theta) {
  return std::pow(std::sin(phi), 2.0 * d - 1.0) * std::cos(phi) *
         std::pow(std::sin(theta), 2.0 * d - 1.0) *
         std::pow(std::cos(theta), 2.0 * level + 1.0);
}
}  // namespace detail

double variance_bound_projective(int d, int level, double r,
                                 const QuadratureOptions& opts) {
  if (d < 1) throw validation_error("projective index must be >= 1");
  if (level < 1) throw validation_error("projective bound needs level >= 1");
  if (!(r > 0.0) || !(r < kHalfPi)) {
    throw validation_error("radius must lie strictly inside (0, pi/2)");
  }
  const double n = static_cast<double>(projective_count(d, level));
  // The inner theta-integral is a tail of a Beta density: with t = cos^2(th),
  //   int_a^{pi/2} sin^{2d-1}(th) cos^{2L+1}(th) dth
  //     = (1/2) B(L+1, d) I_{cos^2 a}(L+1, d),
  // where I is the regularized incomplete beta function. Using the closed
  // form instead of nested quadrature matters: for large L the integrand is a
  // spike of width ~1/sqrt(L) that an adaptive rule's coarse initial stencil
  // can miss entirely, silently returning 0 for exactly the slices that carry
  // the mass. B(L+1, d) = (d-1)! / prod_{j=1..d} (L+j), built exactly below.
  double beta_ld = 1.0;
  for (int j = 1; j <= d; ++j) {
    beta_ld *= static_cast<double>(j) / static_cast<double>(level + j);
  }
  beta_ld /= static_cast<double>(d);
  bool ok = true;
  auto outer = [&](double phi) {
    const double c = std::cos(r - phi);
    const double tail =
        0.5 * beta_ld *
        boost::math::ibeta(static_cast<double>(level + 1),
                           static_cast<double>(d), c * c);
    return std::pow(std::sin(phi), 2.0 * d - 1.0) * std::cos(phi) * tail;
  };
  const double wedge =
      adaptive_simpson(outer, 0.0, r, opts.outer_tol, opts.max_depth, &ok);
  if (!ok) {
    throw numerical_error("projective variance bound quadrature failed");
  }
  return 4.0 * d * d * n * n * wedge;
}

}  // namespace dppdisc
