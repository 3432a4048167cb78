#include "dppdisc/sampler.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <complex>
#include <string>

#include "dppdisc/errors.hpp"

namespace dppdisc {

namespace {

inline double conj_scalar(double x) { return x; }
inline std::complex<double> conj_scalar(const std::complex<double>& x) {
  return std::conj(x);
}
inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& x) { return std::norm(x); }

// Lower-triangular factor stored row-major in packed form; row k occupies
// tri[k(k+1)/2 .. k(k+1)/2 + k]. Diagonal entries are real-positive by
// construction but stored in the scalar type for uniform indexing.
template <class S>
struct PackedCholesky {
  std::vector<S> tri;
  int size = 0;

  void reserve(int n) { tri.reserve(static_cast<std::size_t>(n) * (n + 1) / 2); }

  // Solves L w = v in place over the current size-k factor.
  void forward_solve(std::vector<S>& w) const {
    const S* row = tri.data();
    for (int j = 0; j < size; ++j, row += j) {
      S acc = w[j];
      for (int m = 0; m < j; ++m) acc -= row[m] * w[m];
      w[j] = acc / row[j];
    }
  }

  // Appends the row [conj(w_0) ... conj(w_{k-1}), sqrt(residual)].
  void append_row(const std::vector<S>& w, double residual) {
    for (int m = 0; m < size; ++m) tri.push_back(conj_scalar(w[m]));
    tri.push_back(S(std::sqrt(residual)));
    ++size;
  }

  // Rebuilds the factor from a dense Hermitian Gram matrix.
  template <class Matrix>
  void refactor(const Matrix& g) {
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) {
      throw numerical_error("Gram refactorization failed: matrix not positive "
                            "definite at size " + std::to_string(g.rows()));
    }
    Matrix lower = llt.matrixL();
    tri.clear();
    size = static_cast<int>(g.rows());
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j <= i; ++j) tri.push_back(lower(i, j));
    }
  }
};

template <class S, class KernelFn, class GramFn>
std::vector<Point> run_chain(const Space& space, std::int64_t n_total,
                             KernelFn&& kf, GramFn&& gram_of, RandomStream& rng,
                             RejectionStats& stats) {
  const double n = static_cast<double>(n_total);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n_total));
  PackedCholesky<S> chol;
  chol.reserve(static_cast<int>(n_total));
  std::vector<S> w(static_cast<std::size_t>(n_total));

  auto whitened_residual = [&](const Point& x) {
    for (std::size_t i = 0; i < pts.size(); ++i) w[i] = kf(pts[i], x);
    chol.forward_solve(w);
    double residual = n;
    for (int i = 0; i < chol.size; ++i) residual -= abs2(w[i]);
    return residual;
  };

  for (std::int64_t k = 0; k < n_total; ++k) {
    std::uint64_t attempts = 0;
    for (;;) {
      if (++attempts > kSamplerProposalBudget) {
        throw numerical_error(
            "sampler exceeded the proposal budget at point " +
            std::to_string(k + 1) + " of " + std::to_string(n_total));
      }
      ++stats.proposals;
      const Point x = sample_uniform(space, rng);
      double residual = whitened_residual(x);
      if (residual < -1e-8 * n) {
        // Accumulated factor drift: rebuild from scratch and re-test once.
        ++stats.refactorizations;
        chol.refactor(gram_of(pts));
        residual = whitened_residual(x);
        if (residual < -1e-8 * n) {
          throw numerical_error("conditional residual " +
                                std::to_string(residual) +
                                " below tolerance after refactorization");
        }
      }
      residual = std::max(residual, 0.0);
      if (rng.uniform() * n < residual) {
        if (residual <= 1e-12 * n) {
          // Numerically singular extension; drop the proposal.
          ++stats.degenerate_retries;
          continue;
        }
        chol.append_row(w, residual);
        pts.push_back(x);
        break;
      }
      ++stats.rejected;
    }
  }
  return pts;
}

}  // namespace

SampleSet sample_dpp(const EnsembleKernel& kernel, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_dpp(kernel, rng, seed);
}

SampleSet sample_dpp(const EnsembleKernel& kernel, RandomStream& rng,
                     std::uint64_t recorded_seed) {
  if (!kernel.space.supports_points()) {
    throw validation_error("cannot sample on '" + kernel.space.id +
                           "': no point model");
  }
  SampleSet out;
  out.kernel = kernel;
  out.seed = recorded_seed;
  if (kernel.type == EnsembleType::harmonic) {
    auto kf = [&](const Point& p, const Point& q) {
      return kernel_radial(kernel, distance(kernel.space, p, q));
    };
    auto gram_of = [&](const std::vector<Point>& pts) {
      Eigen::MatrixXd g(pts.size(), pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        g(i, i) = static_cast<double>(kernel.trace);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          g(i, j) = g(j, i) = kf(pts[i], pts[j]);
        }
      }
      return g;
    };
    out.points = run_chain<double>(kernel.space, kernel.trace, kf, gram_of, rng,
                                   out.stats);
  } else {
    auto kf = [&](const Point& p, const Point& q) {
      return kernel_eval(kernel, p, q);
    };
    auto gram_of = [&](const std::vector<Point>& pts) {
      return gram(kernel, std::span<const Point>(pts.data(), pts.size()));
    };
    out.points = run_chain<std::complex<double>>(kernel.space, kernel.trace, kf,
                                                 gram_of, rng, out.stats);
  }
  return out;
}

GramCholesky GramCholesky::compute(const EnsembleKernel& kernel,
                                   std::span<const Point> pts) {
  GramCholesky f;
  if (pts.empty()) {
    f.lower.resize(0, 0);
    return f;
  }
  Eigen::MatrixXcd g = gram(kernel, pts);
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw numerical_error(
        "Gram matrix is singular past tolerance; cannot condition on " +
        std::to_string(pts.size()) + " points");
  }
  f.lower = llt.matrixL();
  return f;
}

double conditional_density(const EnsembleKernel& kernel,
                           std::span<const Point> drawn,
                           const GramCholesky& factor, const Point& x) {
  const double n = static_cast<double>(kernel.trace);
  if (drawn.empty()) return n;
  if (factor.lower.rows() != static_cast<Eigen::Index>(drawn.size())) {
    throw validation_error("Cholesky factor size does not match drawn points");
  }
  Eigen::VectorXcd v(drawn.size());
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = kernel_eval(kernel, drawn[i], x);
  }
  factor.lower.triangularView<Eigen::Lower>().solveInPlace(v);
  double residual = n - v.squaredNorm();
  if (residual < -1e-8 * n) {
    throw numerical_error("conditional density " + std::to_string(residual) +
                          " below the roundoff floor");
  }
  return std::clamp(residual, 0.0, n);
}

}  // namespace dppdisc
