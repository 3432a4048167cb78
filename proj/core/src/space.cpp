#include "dppdisc/space.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace dppdisc {

namespace {

constexpr double kPi = std::numbers::pi;

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

Space make_space(SpaceKind kind, int d, double alpha, double beta, double kappa,
                 std::string id) {
  Space s;
  s.kind = kind;
  s.index = d;
  s.alpha = alpha;
  s.beta = beta;
  s.kappa = kappa;
  s.dim_real = static_cast<int>(std::lround(2.0 * alpha + 2.0));
  s.diameter = kPi / (2.0 * kappa);
  s.id = std::move(id);
  return s;
}

int parse_index(std::string_view id, std::size_t prefix_len) {
  int d = 0;
  const char* first = id.data() + prefix_len;
  const char* last = id.data() + id.size();
  auto [ptr, ec] = std::from_chars(first, last, d);
  if (ec != std::errc{} || ptr != last) {
    throw validation_error("unknown space id '" + std::string(id) + "'");
  }
  return d;
}

}  // namespace

Space Space::sphere(int d) {
  if (d < 1) throw validation_error("sphere index must be >= 1");
  return make_space(SpaceKind::sphere, d, 0.5 * (d - 2), 0.5 * (d - 2), 0.5,
                    "s" + std::to_string(d));
}

Space Space::real_projective(int d) {
  if (d < 1) throw validation_error("projective index must be >= 1");
  return make_space(SpaceKind::real_projective, d, 0.5 * (d - 2), -0.5, 1.0,
                    "rp" + std::to_string(d));
}

Space Space::complex_projective(int d) {
  if (d < 1) throw validation_error("projective index must be >= 1");
  return make_space(SpaceKind::complex_projective, d, d - 1.0, 0.0, 1.0,
                    "cp" + std::to_string(d));
}

Space Space::quaternionic_projective(int d) {
  if (d < 1) throw validation_error("projective index must be >= 1");
  return make_space(SpaceKind::quaternionic_projective, d, 2.0 * d - 1.0, 1.0,
                    1.0, "hp" + std::to_string(d));
}

Space Space::octonionic_plane() {
  return make_space(SpaceKind::octonionic_plane, 2, 7.0, 3.0, 1.0, "op2");
}

Space Space::from_id(std::string_view id) {
  if (id.size() >= 2 && id[0] == 's' && std::isdigit(static_cast<unsigned char>(id[1]))) {
    return sphere(parse_index(id, 1));
  }
  if (id.size() >= 3 && id.substr(0, 2) == "rp") {
    return real_projective(parse_index(id, 2));
  }
  if (id.size() >= 3 && id.substr(0, 2) == "cp") {
    return complex_projective(parse_index(id, 2));
  }
  if (id.size() >= 3 && id.substr(0, 2) == "hp") {
    return quaternionic_projective(parse_index(id, 2));
  }
  if (id == "op2") return octonionic_plane();
  throw validation_error("unknown space id '" + std::string(id) + "'");
}

int Space::coord_size() const {
  switch (kind) {
    case SpaceKind::sphere:
    case SpaceKind::real_projective:
      return index + 1;
    case SpaceKind::complex_projective:
      return 2 * (index + 1);
    default:
      throw validation_error("space '" + id + "' has no point model");
  }
}

Point make_point(const Space& space, const Eigen::VectorXd& coords) {
  if (!space.supports_points()) {
    throw validation_error("space '" + space.id + "' has no point model");
  }
  if (coords.size() != space.coord_size()) {
    throw validation_error("point has " + std::to_string(coords.size()) +
                           " coordinates, expected " +
                           std::to_string(space.coord_size()) + " for '" +
                           space.id + "'");
  }
  const double norm = coords.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw validation_error("point norm " + std::to_string(norm) +
                           " deviates from 1 by more than 1e-9");
  }
  Point p{coords / norm};
  return p;
}

Point basis_point(const Space& space, int axis) {
  if (!space.supports_points()) {
    throw validation_error("space '" + space.id + "' has no point model");
  }
  if (axis < 0 || axis >= space.coord_size()) {
    throw validation_error("basis axis out of range");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.coord_size());
  v[axis] = 1.0;
  return Point{std::move(v)};
}

Ball make_ball(const Space& space, const Point& center, double radius) {
  if (!(radius >= 0.0) || radius > space.diameter + 1e-12) {
    throw validation_error("ball radius " + std::to_string(radius) +
                           " outside [0, diameter=" +
                           std::to_string(space.diameter) + "]");
  }
  return Ball{center, std::min(radius, space.diameter)};
}

std::complex<double> hermitian_inner(const Space& space,
                                     const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& v) {
  if (space.kind == SpaceKind::complex_projective) {
    const int m = space.index + 1;
    const auto ur = u.head(m), ui = u.tail(m);
    const auto vr = v.head(m), vi = v.tail(m);
    return {ur.dot(vr) + ui.dot(vi), ui.dot(vr) - ur.dot(vi)};
  }
  return {u.dot(v), 0.0};
}

double distance(const Space& space, const Point& p, const Point& q) {
  switch (space.kind) {
    case SpaceKind::sphere: {
      const double c = std::clamp(p.coords.dot(q.coords), -1.0, 1.0);
      return std::acos(c);
    }
    case SpaceKind::real_projective: {
      const double c = std::min(std::abs(p.coords.dot(q.coords)), 1.0);
      return std::acos(c);
    }
    case SpaceKind::complex_projective: {
      const double c =
          std::min(std::abs(hermitian_inner(space, p.coords, q.coords)), 1.0);
      return std::acos(c);
    }
    default:
      throw validation_error("space '" + space.id + "' has no point model");
  }
}

double radial_density(const Space& space, double theta) {
  if (!(theta >= 0.0) || theta > space.diameter + 1e-12) {
    throw validation_error("radius outside [0, diameter]");
  }
  theta = std::min(theta, space.diameter);
  const double a = space.alpha, b = space.beta, k = space.kappa;
  const double c = 2.0 * k * std::exp(-lbeta(a + 1.0, b + 1.0));
  return c * std::pow(std::sin(k * theta), 2.0 * a + 1.0) *
         std::pow(std::cos(k * theta), 2.0 * b + 1.0);
}

double ball_volume(const Space& space, double r) {
  if (!(r >= 0.0) || r > space.diameter + 1e-12) {
    throw validation_error("radius outside [0, diameter]");
  }
  r = std::min(r, space.diameter);
  switch (space.kind) {
    case SpaceKind::sphere:
      if (space.index == 1) return r / kPi;
      if (space.index == 2) return 0.5 * (1.0 - std::cos(r));
      break;
    case SpaceKind::complex_projective:
      return std::pow(std::sin(r), 2.0 * space.index);
    default:
      break;
  }
  const double s = std::sin(space.kappa * r);
  return boost::math::ibeta(space.alpha + 1.0, space.beta + 1.0, s * s);
}

double radius_for_volume(const Space& space, double v) {
  if (!(v >= 0.0) || v > 1.0 + 1e-12) {
    throw validation_error("volume outside [0, 1]");
  }
  v = std::clamp(v, 0.0, 1.0);
  // The density vanishes at both ends for most parameter rows, so the CDF is
  // flat there and bisection cannot pin the endpoints; invert them exactly.
  if (v == 0.0) return 0.0;
  if (v == 1.0) return space.diameter;
  switch (space.kind) {
    case SpaceKind::sphere:
      if (space.index == 1) return v * kPi;
      if (space.index == 2) return std::acos(std::clamp(1.0 - 2.0 * v, -1.0, 1.0));
      break;
    case SpaceKind::complex_projective:
      return std::asin(std::min(1.0, std::pow(v, 1.0 / (2.0 * space.index))));
    default:
      break;
  }
  double lo = 0.0, hi = space.diameter;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * space.diameter; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ball_volume(space, mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

Eigen::VectorXd gaussian_vector(int n, RandomStream& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// w <- w - z * c interpreting c, w as complex vectors in the real layout and
// z as a complex scalar.
void axpy_complex(const Space& space, const std::complex<double>& z,
                  const Eigen::VectorXd& c, Eigen::VectorXd& w) {
  const int m = space.index + 1;
  w.head(m) -= z.real() * c.head(m) - z.imag() * c.tail(m);
  w.tail(m) -= z.real() * c.tail(m) + z.imag() * c.head(m);
}

// Unit tangent direction at `center`, uniform on the unit sphere of the
// (real) orthogonal complement; for CP^d the complement is taken with respect
// to the Hermitian inner product so the geodesic stays horizontal.
Eigen::VectorXd random_tangent(const Space& space, const Point& center,
                               RandomStream& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::VectorXd w = gaussian_vector(space.coord_size(), rng);
    if (space.kind == SpaceKind::complex_projective) {
      const std::complex<double> z = hermitian_inner(space, w, center.coords);
      axpy_complex(space, z, center.coords, w);
    } else {
      w -= w.dot(center.coords) * center.coords;
    }
    const double n = w.norm();
    if (n > 1e-12) return w / n;
  }
  throw numerical_error("failed to draw a tangent direction");
}

}  // namespace

Point sample_uniform(const Space& space, RandomStream& rng) {
  if (!space.supports_points()) {
    throw validation_error("space '" + space.id + "' has no point model");
  }
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::VectorXd v = gaussian_vector(space.coord_size(), rng);
    const double n = v.norm();
    if (n > 1e-12) return Point{v / n};
  }
  throw numerical_error("failed to draw a uniform point");
}

Point sample_at_distance(const Space& space, const Point& center, double theta,
                         RandomStream& rng) {
  if (!(theta >= 0.0) || theta > space.diameter + 1e-12) {
    throw validation_error("distance outside [0, diameter]");
  }
  theta = std::min(theta, space.diameter);
  const Eigen::VectorXd w = random_tangent(space, center, rng);
  Point p{std::cos(theta) * center.coords + std::sin(theta) * w};
  p.coords.normalize();
  return p;
}

Point sample_in_shell(const Space& space, const Point& center, double r_lo,
                      double r_hi, RandomStream& rng) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo) || r_hi > space.diameter + 1e-12) {
    throw validation_error("invalid shell radii");
  }
  const double v_lo = ball_volume(space, r_lo);
  const double v_hi = ball_volume(space, std::min(r_hi, space.diameter));
  const double theta = radius_for_volume(space, rng.uniform(v_lo, v_hi));
  return sample_at_distance(space, center, theta, rng);
}

Point sample_in_ball_rejection(const Space& space, const Ball& ball,
                               RandomStream& rng, std::uint64_t max_attempts) {
  if (!(ball.radius > 0.0)) {
    throw validation_error("rejection sampling needs a ball of positive radius");
  }
  for (std::uint64_t i = 0; i < max_attempts; ++i) {
    Point p = sample_uniform(space, rng);
    if (distance(space, p, ball.center) < ball.radius) return p;
  }
  throw numerical_error("rejection sampling exhausted " +
                        std::to_string(max_attempts) + " attempts");
}

std::vector<std::string> builtin_space_ids() {
  return {"s1", "s2", "s3", "s4", "rp1", "rp2", "rp3", "cp1",
          "cp2", "cp3", "hp1", "hp2", "op2"};
}

}  // namespace dppdisc
