#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "dppdisc/ensemble.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/space.hpp"

namespace dppdisc {

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t rejected = 0;
  std::uint64_t degenerate_retries = 0;
  std::uint64_t refactorizations = 0;
};

struct SampleSet {
  EnsembleKernel kernel;
  std::vector<Point> points;   // exactly kernel.trace points
  std::uint64_t seed = 0;      // seed this draw was produced from
  RejectionStats stats;
};

// Draws one realization of the determinantal process by the sequential
// conditional (chain) rule: the k-th point is proposed uniformly and accepted
// with probability residual / (N - k + 1), where the residual comes from an
// incrementally extended Cholesky factor of the Gram matrix of the points
// drawn so far. Deterministic given the seed.
SampleSet sample_dpp(const EnsembleKernel& kernel, std::uint64_t seed);

// Same, drawing entropy from an existing stream; `recorded_seed` is stored in
// the result for bookkeeping only.
SampleSet sample_dpp(const EnsembleKernel& kernel, RandomStream& rng,
                     std::uint64_t recorded_seed = 0);

// Cholesky factor of the Gram matrix of a fixed point configuration, for
// evaluating conditional densities at query points.
struct GramCholesky {
  Eigen::MatrixXcd lower;
  static GramCholesky compute(const EnsembleKernel& kernel,
                              std::span<const Point> pts);
};

// Unnormalized conditional intensity of the process at x given the points in
// `drawn`: K(x,x) minus the squared norm of the whitened cross-kernel vector.
// Lies in [0, N]; integrates to N - |drawn| over the space.
double conditional_density(const EnsembleKernel& kernel,
                           std::span<const Point> drawn,
                           const GramCholesky& factor, const Point& x);

// Per-point proposal budget before the sampler gives up.
inline constexpr std::uint64_t kSamplerProposalBudget = 1000000;

}  // namespace dppdisc
