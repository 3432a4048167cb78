#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "dppdisc/errors.hpp"
#include "dppdisc/rng.hpp"

namespace dppdisc {

// The compact connected two-point homogeneous spaces: round spheres and the
// projective spaces over R, C, H, O (the octonionic case exists only as the
// plane). Each carries a rotation-invariant probability measure and a
// geodesic distance; all metric quantities reduce to one radial profile.
enum class SpaceKind {
  sphere,
  real_projective,
  complex_projective,
  quaternionic_projective,
  octonionic_plane,
};

// Geometry descriptor. The Jacobi exponents (alpha, beta), the metric scale
// kappa, and the real dimension determine every radial formula:
//   density(theta) = c * sin(kappa theta)^(2 alpha + 1) cos(kappa theta)^(2 beta + 1)
//   diameter      = pi / (2 kappa)
//   dim_real      = 2 alpha + 2.
struct Space {
  SpaceKind kind;
  int index;        // the d in S^d, RP^d, CP^d, HP^d (2 for the octonionic plane)
  double alpha;
  double beta;
  double kappa;     // 1/2 on spheres, 1 on projective spaces
  int dim_real;
  double diameter;
  std::string id;

  static Space sphere(int d);
  static Space real_projective(int d);
  static Space complex_projective(int d);
  static Space quaternionic_projective(int d);
  static Space octonionic_plane();

  // Parses ids like "s2", "rp3", "cp1", "hp2", "op2".
  static Space from_id(std::string_view id);

  // Quaternionic and octonionic spaces are carried as parameter sets only:
  // radial density, ball volumes and quadrature work, but there is no point
  // model for them.
  bool supports_points() const {
    return kind == SpaceKind::sphere || kind == SpaceKind::real_projective ||
           kind == SpaceKind::complex_projective;
  }

  // Length of the real coordinate vector of a point: d+1 for S^d and RP^d,
  // 2(d+1) for CP^d (real parts of the homogeneous coordinates first, then
  // imaginary parts).
  int coord_size() const;
};

// A point is a unit vector in the embedding layout described above. RP^d and
// CP^d points are unit representatives of their line; all point operations
// are invariant under the choice of representative.
struct Point {
  Eigen::VectorXd coords;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

// Validates layout and unit norm (tolerance 1e-12 after renormalization;
// inputs off by more than 1e-9 are rejected).
Point make_point(const Space& space, const Eigen::VectorXd& coords);
Point basis_point(const Space& space, int axis = 0);
Ball make_ball(const Space& space, const Point& center, double radius);

// Hermitian inner product <u, v> = sum_i u_i conj(v_i) of two CP^d points in
// the real layout. For real kinds the imaginary part is zero.
std::complex<double> hermitian_inner(const Space& space,
                                     const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& v);

// Geodesic distance. Range [0, pi] on spheres and [0, pi/2] on projective
// spaces; inverse cosines are clamped against roundoff.
double distance(const Space& space, const Point& p, const Point& q);

// Density of the distance-to-a-fixed-point distribution under the uniform
// measure, on [0, diameter].
double radial_density(const Space& space, double theta);

// Measure of a ball of radius r: the regularized incomplete beta function
// I_{sin^2(kappa r)}(alpha + 1, beta + 1), with closed forms on S^1, S^2 and
// CP^d. Defined for all five kinds.
double ball_volume(const Space& space, double r);

// Inverse of ball_volume on [0, diameter].
double radius_for_volume(const Space& space, double v);

// Uniform point from the invariant probability measure.
Point sample_uniform(const Space& space, RandomStream& rng);

// Uniform point on the distance sphere {y : d(y, center) = theta}.
Point sample_at_distance(const Space& space, const Point& center, double theta,
                         RandomStream& rng);

// Uniform point in the shell {y : r_lo <= d(y, center) < r_hi}, drawn by
// inverting the radial volume profile (exact, no rejection).
Point sample_in_shell(const Space& space, const Point& center, double r_lo,
                      double r_hi, RandomStream& rng);

// Uniform point in the open ball, drawn by rejection from the whole space.
Point sample_in_ball_rejection(const Space& space, const Ball& ball,
                               RandomStream& rng,
                               std::uint64_t max_attempts = 1000000);

// All space ids printed by the CLI overview (one representative per family
// and dimension actually enumerated; the families accept any d >= 1).
std::vector<std::string> builtin_space_ids();

}  // namespace dppdisc
