#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dppdisc/errors.hpp"
#include "dppdisc/space.hpp"
#include "support/oracles.hpp"

using namespace dppdisc;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("spaces") {

TEST_CASE("parameter table") {
  struct Row {
    const char* id;
    double alpha, beta, kappa;
    int dim;
    double diameter;
  };
  // One row per family: sphere, real/complex/quaternionic projective, and the
  // octonionic plane.
  const Row rows[] = {
      {"s1", -0.5, -0.5, 0.5, 1, kPi},
      {"s2", 0.0, 0.0, 0.5, 2, kPi},
      {"s3", 0.5, 0.5, 0.5, 3, kPi},
      {"rp2", 0.0, -0.5, 1.0, 2, kPi / 2},
      {"rp3", 0.5, -0.5, 1.0, 3, kPi / 2},
      {"cp1", 0.0, 0.0, 1.0, 2, kPi / 2},
      {"cp2", 1.0, 0.0, 1.0, 4, kPi / 2},
      {"cp3", 2.0, 0.0, 1.0, 6, kPi / 2},
      {"hp1", 1.0, 1.0, 1.0, 4, kPi / 2},
      {"hp2", 3.0, 1.0, 1.0, 8, kPi / 2},
      {"op2", 7.0, 3.0, 1.0, 16, kPi / 2},
  };
  for (const Row& r : rows) {
    CAPTURE(r.id);
    const Space s = Space::from_id(r.id);
    CHECK(s.alpha == doctest::Approx(r.alpha));
    CHECK(s.beta == doctest::Approx(r.beta));
    CHECK(s.kappa == doctest::Approx(r.kappa));
    CHECK(s.dim_real == r.dim);
    CHECK(s.diameter == doctest::Approx(r.diameter));
    CHECK(s.id == r.id);
    // dim = 2 alpha + 2 always.
    CHECK(s.dim_real == doctest::Approx(2 * s.alpha + 2));
  }
  CHECK_THROWS_AS(Space::from_id("q2"), validation_error);
  CHECK_THROWS_AS(Space::from_id("s0"), validation_error);
  CHECK_THROWS_AS(Space::from_id("sphere"), validation_error);
  CHECK_THROWS_AS(Space::from_id("cp"), validation_error);
}

TEST_CASE("point validation and normalization") {
  const Space s2 = Space::from_id("s2");
  Eigen::VectorXd v(3);
  v << 1.0, 0.0, 0.0;
  CHECK_NOTHROW(make_point(s2, v));
  v << 1.0 + 5e-10, 0.0, 0.0;  // renormalizable
  const Point p = make_point(s2, v);
  CHECK(p.coords.norm() == doctest::Approx(1.0).epsilon(1e-12));
  v << 1.0 + 5e-9, 0.0, 0.0;  // too far off
  CHECK_THROWS_AS(make_point(s2, v), validation_error);
  Eigen::VectorXd wrong(4);
  wrong << 1, 0, 0, 0;
  CHECK_THROWS_AS(make_point(s2, wrong), validation_error);

  const Space hp1 = Space::from_id("hp1");
  CHECK_THROWS_AS(basis_point(hp1), validation_error);
  RandomStream rng(1);
  CHECK_THROWS_AS(sample_uniform(hp1, rng), validation_error);
  CHECK_THROWS_AS(basis_point(Space::from_id("op2")), validation_error);
}

TEST_CASE("distances: sphere, antipodes, projective lines") {
  const Space s2 = Space::from_id("s2");
  const Point e1 = basis_point(s2, 0), e2 = basis_point(s2, 1);
  CHECK(distance(s2, e1, e1) == doctest::Approx(0.0));
  CHECK(distance(s2, e1, e2) == doctest::Approx(kPi / 2));
  Point anti{-e1.coords};
  CHECK(distance(s2, e1, anti) == doctest::Approx(kPi));

  const Space rp2 = Space::from_id("rp2");
  const Point r1 = basis_point(rp2, 0);
  Point r1neg{-r1.coords};
  CHECK(distance(rp2, r1, r1neg) == doctest::Approx(0.0));  // same line

  // CP^2: distance arccos |<u, v>| for unit representatives; u = e1,
  // v = (e1 + e2)/sqrt(2) gives arccos(1/sqrt 2) = pi/4.
  const Space cp2 = Space::from_id("cp2");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(6), v = Eigen::VectorXd::Zero(6);
  u[0] = 1.0;
  v[0] = v[1] = 1.0 / std::sqrt(2.0);
  CHECK(distance(cp2, make_point(cp2, u), make_point(cp2, v)) ==
        doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("distance is isometry- and representative-invariant") {
  RandomStream rng(5);
  for (const char* id : {"s2", "s3", "rp2", "rp3"}) {
    const Space sp = Space::from_id(id);
    const Eigen::MatrixXd q = oracle::random_rotation(sp.coord_size(), rng);
    for (int trial = 0; trial < 20; ++trial) {
      const Point a = sample_uniform(sp, rng), b = sample_uniform(sp, rng);
      const double d0 = distance(sp, a, b);
      const double d1 = distance(sp, oracle::rotate(sp, q, a), oracle::rotate(sp, q, b));
      CHECK(d0 == doctest::Approx(d1).epsilon(1e-10));
      CHECK(d0 >= 0.0);
      CHECK(d0 <= sp.diameter + 1e-12);
    }
  }
  const Space cp2 = Space::from_id("cp2");
  const Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const Point a = sample_uniform(cp2, rng), b = sample_uniform(cp2, rng);
    const double d0 = distance(cp2, a, b);
    CHECK(d0 == doctest::Approx(distance(cp2, oracle::rotate_cp(cp2, u, a),
                                         oracle::rotate_cp(cp2, u, b)))
                    .epsilon(1e-10));
    CHECK(d0 == doctest::Approx(distance(cp2, oracle::gauge_cp(cp2, 1.234, a), b))
                    .epsilon(1e-10));
  }
}

TEST_CASE("triangle inequality on samples") {
  RandomStream rng(11);
  for (const char* id : {"s2", "rp3", "cp2"}) {
    const Space sp = Space::from_id(id);
    for (int trial = 0; trial < 50; ++trial) {
      const Point a = sample_uniform(sp, rng), b = sample_uniform(sp, rng),
                  c = sample_uniform(sp, rng);
      CHECK(distance(sp, a, c) <=
            distance(sp, a, b) + distance(sp, b, c) + 1e-10);
    }
  }
}

TEST_CASE("radial density integrates to one and matches closed forms") {
  for (const char* id : {"s1", "s2", "s4", "rp2", "rp3", "cp1", "cp2", "hp1",
                         "hp2", "op2"}) {
    const Space sp = Space::from_id(id);
    CAPTURE(id);
    const double total = oracle::riemann_1d(
        [&](double t) { return radial_density(sp, t); }, 0.0, sp.diameter,
        200000);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
  // S^2: density sin(theta)/2.
  const Space s2 = Space::from_id("s2");
  CHECK(radial_density(s2, 1.0) == doctest::Approx(std::sin(1.0) / 2).epsilon(1e-12));
  // S^1: density 1/pi.
  const Space s1 = Space::from_id("s1");
  CHECK(radial_density(s1, 2.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("ball volume: closed forms, endpoints, density consistency") {
  const Space s2 = Space::from_id("s2");
  CHECK(ball_volume(s2, 0.0) == doctest::Approx(0.0));
  CHECK(ball_volume(s2, kPi) == doctest::Approx(1.0));
  CHECK(ball_volume(s2, kPi / 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ball_volume(s2, 1.0) == doctest::Approx(0.5 * (1 - std::cos(1.0))).epsilon(1e-12));

  const Space s1 = Space::from_id("s1");
  CHECK(ball_volume(s1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));

  const Space cp2 = Space::from_id("cp2");
  CHECK(ball_volume(cp2, 0.7) == doctest::Approx(std::pow(std::sin(0.7), 4)).epsilon(1e-12));

  // For every kind, ball_volume' = radial_density (checked by integrating the
  // density with a dense Riemann sum).
  for (const char* id : {"s3", "rp3", "cp2", "hp1", "hp2", "op2"}) {
    const Space sp = Space::from_id(id);
    CAPTURE(id);
    for (double frac : {0.25, 0.5, 0.8}) {
      const double r = frac * sp.diameter;
      const double direct = ball_volume(sp, r);
      const double integrated = oracle::riemann_1d(
          [&](double t) { return radial_density(sp, t); }, 0.0, r, 200000);
      CHECK(direct == doctest::Approx(integrated).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(ball_volume(s2, -0.1), validation_error);
  CHECK_THROWS_AS(ball_volume(s2, 4.0), validation_error);
}

TEST_CASE("radius_for_volume inverts ball_volume") {
  RandomStream rng(3);
  for (const char* id : {"s1", "s2", "s3", "rp2", "cp1", "cp2", "hp1", "op2"}) {
    const Space sp = Space::from_id(id);
    CAPTURE(id);
    for (int i = 0; i < 30; ++i) {
      const double v = rng.uniform();
      const double r = radius_for_volume(sp, v);
      CHECK(ball_volume(sp, r) == doctest::Approx(v).epsilon(1e-9));
    }
    CHECK(radius_for_volume(sp, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(radius_for_volume(sp, 1.0) == doctest::Approx(sp.diameter).epsilon(1e-9));
  }
}

TEST_CASE("uniform samples have uniform ball-volume CDF") {
  // If x is uniform then vol(B(c, d(c, x))) is uniform on [0, 1]; check the
  // first two moments on several spaces.
  RandomStream rng(17);
  for (const char* id : {"s2", "rp2", "cp1", "cp2"}) {
    const Space sp = Space::from_id(id);
    CAPTURE(id);
    const Point c = sample_uniform(sp, rng);
    const int n = 20000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double v = ball_volume(sp, distance(sp, c, sample_uniform(sp, rng)));
      s1 += v;
      s2 += v * v;
    }
    // mean 1/2 (sd of estimate ~ 0.002), second moment 1/3.
    CHECK(s1 / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(s2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.03));
  }
}

TEST_CASE("sample_at_distance hits the requested distance") {
  RandomStream rng(23);
  for (const char* id : {"s2", "s3", "rp2", "cp2"}) {
    const Space sp = Space::from_id(id);
    CAPTURE(id);
    const Point c = sample_uniform(sp, rng);
    for (double frac : {0.1, 0.5, 0.9}) {
      const double theta = frac * sp.diameter;
      for (int i = 0; i < 10; ++i) {
        const Point y = sample_at_distance(sp, c, theta, rng);
        CHECK(distance(sp, c, y) == doctest::Approx(theta).epsilon(1e-9));
        CHECK(y.coords.norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sample_in_shell stays in the shell and fills it uniformly") {
  RandomStream rng(29);
  const Space s2 = Space::from_id("s2");
  const Point c = basis_point(s2);
  const double lo = 0.4, hi = 1.1;
  const int n = 20000;
  int below_mid = 0;
  const double v_lo = ball_volume(s2, lo), v_hi = ball_volume(s2, hi);
  const double r_mid = radius_for_volume(s2, 0.5 * (v_lo + v_hi));
  for (int i = 0; i < n; ++i) {
    const Point y = sample_in_shell(s2, c, lo, hi, rng);
    const double d = distance(s2, c, y);
    CHECK(d >= lo - 1e-9);
    CHECK(d < hi + 1e-9);
    if (d < r_mid) ++below_mid;
  }
  // Half the volume-mass lies below r_mid; binomial sd ~ 0.0035.
  CHECK(static_cast<double>(below_mid) / n == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("rejection ball sampling lands inside and matches volume rate") {
  RandomStream rng(31);
  const Space cp1 = Space::from_id("cp1");
  const Ball ball = make_ball(cp1, basis_point(cp1), 0.6);
  for (int i = 0; i < 200; ++i) {
    const Point y = sample_in_ball_rejection(cp1, ball, rng);
    CHECK(distance(cp1, y, ball.center) < ball.radius);
  }
  CHECK_THROWS_AS(
      sample_in_ball_rejection(cp1, make_ball(cp1, basis_point(cp1), 0.0), rng),
      validation_error);
}

TEST_CASE("ball validation") {
  const Space s2 = Space::from_id("s2");
  CHECK_THROWS_AS(make_ball(s2, basis_point(s2), -0.2), validation_error);
  CHECK_THROWS_AS(make_ball(s2, basis_point(s2), 4.0), validation_error);
  CHECK_NOTHROW(make_ball(s2, basis_point(s2), kPi));
}

}  // TEST_SUITE
