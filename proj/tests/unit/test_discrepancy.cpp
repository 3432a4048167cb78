#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/space.hpp"
#include "support/oracles.hpp"

using namespace dppdisc;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent evaluation of the per-net supremum: for one center, the count
// is a step function of the radius with jumps at the sorted distances, so the
// sup over each constancy interval (lo, hi] is attained at an endpoint.
double brute_center_sup(const Space& sp, std::span<const Point> pts,
                        const Point& center, double n_scale) {
  std::vector<double> d;
  for (const Point& p : pts) d.push_back(distance(sp, center, p));
  std::sort(d.begin(), d.end());
  double sup = 0.0;
  const std::size_t m = d.size();
  for (std::size_t i = 0; i <= m; ++i) {
    const double lo = i == 0 ? 0.0 : d[i - 1];
    const double hi = i == m ? sp.diameter : std::min(d[i], sp.diameter);
    if (lo >= hi) continue;
    // count == i on (lo, hi]
    sup = std::max(sup, static_cast<double>(i) - n_scale * ball_volume(sp, lo));
    sup = std::max(sup, n_scale * ball_volume(sp, hi) - static_cast<double>(i));
  }
  return sup;
}
}  // namespace

TEST_SUITE("discrepancy") {

TEST_CASE("separated sets on the circle hold 3 or 4 centers at pi/2") {
  const Space s1 = Space::from_id("s1");
  RandomStream rng(41);
  const SeparatedSet set = max_separated_set(s1, kPi / 2, rng);
  CHECK(set.maximality_declared);
  CHECK_FALSE(set.proposal_cap_hit);
  // Packing on a circumference-2pi circle at separation pi/2 caps at 4; a
  // maximal greedy set cannot have fewer than 3 (two points leave an arc of
  // length >= pi uncovered on one side).
  CHECK(set.centers.size() >= 3);
  CHECK(set.centers.size() <= 4);
}

TEST_CASE("separation and covering properties") {
  RandomStream rng(43);
  for (const char* id : {"s2", "rp2", "cp1"}) {
    const Space sp = Space::from_id(id);
    const double eps = 0.35;
    const SeparatedSet set = max_separated_set(sp, eps, rng);
    REQUIRE(set.centers.size() >= 2);
    for (std::size_t i = 0; i < set.centers.size(); ++i) {
      for (std::size_t j = i + 1; j < set.centers.size(); ++j) {
        CHECK(distance(sp, set.centers[i], set.centers[j]) >= eps);
      }
    }
    // Maximality makes the set an eps-covering: any point that were farther
    // than eps from every center would have been accepted.
    for (int t = 0; t < 500; ++t) {
      const Point probe = sample_uniform(sp, rng);
      double nearest = sp.diameter;
      for (const Point& c : set.centers) {
        nearest = std::min(nearest, distance(sp, probe, c));
      }
      CHECK(nearest < eps);
    }
  }
}

TEST_CASE("net geometry fields") {
  const Space s2 = Space::from_id("s2");
  for (int n : {2, 5}) {
    const BallNet net = build_net(s2, n, 7);
    CHECK(net.n == n);
    CHECK(net.epsilon == doctest::Approx(1.0 / (4.0 * n)));
    CHECK(net.delta == doctest::Approx(1.0 / (2.0 * n)));
    // Top grid radius reaches past the diameter by at least one step pair.
    const double top = net.delta * (net.radius_count - 1);
    CHECK(top >= s2.diameter + 1.0 / n - 1e-12);
    CHECK(top - net.delta < s2.diameter + 1.0 / n);
    CHECK(net.covering_max_gap < net.epsilon);
    CHECK(net.ahlfors_c1 > 0.0);
    CHECK(net.ahlfors_c2 >= net.ahlfors_c1);
    CHECK(net.cardinality() ==
          static_cast<std::int64_t>(net.centers.size()) * net.radius_count + 1);
    CHECK(net.exponent_c() >= s2.dim_real + 1);
    CHECK(net.observed_center_constant ==
          doctest::Approx(net.centers.size() / std::pow(n, s2.dim_real)));
  }
}

TEST_CASE("ahlfors constants bracket the volume ratio") {
  const Space s2 = Space::from_id("s2");
  const BallNet net = build_net(s2, 3, 11);
  // On S^2, vol(r)/r^2 = (1 - cos r)/(2 r^2): decreasing from 1/4 at 0+ to
  // 1/pi^2 at the diameter.
  CHECK(net.ahlfors_c2 <= 0.25 + 1e-9);
  CHECK(net.ahlfors_c1 >= 1.0 / (kPi * kPi) - 1e-9);
  CHECK(net.ahlfors_c2 > 0.2);  // grid starts near 0 where the ratio peaks
}

TEST_CASE("ball counting uses the open ball") {
  const Space s2 = Space::from_id("s2");
  const Point e1 = basis_point(s2, 0), e2 = basis_point(s2, 1),
              e3 = basis_point(s2, 2);
  std::vector<Point> pts = {e1, e2, e3};  // e2, e3 at exactly pi/2 from e1
  CHECK(count_in_ball(s2, pts, make_ball(s2, e1, kPi / 2)) == 1);
  CHECK(count_in_ball(s2, pts, make_ball(s2, e1, kPi / 2 + 1e-9)) == 3);
  CHECK(count_in_ball(s2, pts, make_ball(s2, e1, 1e-12)) == 1);
}

TEST_CASE("sandwich encloses the target ball") {
  const Space s2 = Space::from_id("s2");
  const BallNet net = build_net(s2, 8, 13);
  RandomStream rng(45);
  const double max_vol_gap = net_slack(net, 1);  // slack per unit point mass
  for (int trial = 0; trial < 60; ++trial) {
    const Point x = sample_uniform(s2, rng);
    const double r = rng.uniform(1e-3, s2.diameter);
    const Ball target = make_ball(s2, x, r);
    const auto sw = sandwich(net, target);
    REQUIRE(sw.has_value());
    const Point& s = net.centers[sw->center_index];
    CHECK(distance(s2, x, s) < net.epsilon);
    CHECK(sw->r2 - sw->r1 == doctest::Approx(2.0 * net.delta));
    CHECK(sw->inner_empty == (sw->r1 == 0.0));
    // Inner inclusion: points of B(s, r1) lie in B(x, r). The shell sampler
    // places probes exactly, so boundary cases cost nothing extra.
    if (!sw->inner_empty) {
      for (int t = 0; t < 40; ++t) {
        const Point y = sample_in_shell(s2, s, 0.0, sw->r1, rng);
        CHECK(distance(s2, x, y) < r + 1e-12);
      }
    }
    // Outer inclusion: points of B(x, r) lie in B(s, r2).
    for (int t = 0; t < 40; ++t) {
      const Point y = sample_in_shell(s2, x, 0.0, r, rng);
      CHECK(distance(s2, s, y) < sw->r2 + 1e-12);
    }
    // The volume window of the pair is within the advertised slack.
    const double gap = ball_volume(s2, std::min(sw->r2, s2.diameter)) -
                       ball_volume(s2, std::min(sw->r1, s2.diameter));
    CHECK(gap <= max_vol_gap + 1e-12);
  }
}

TEST_CASE("sandwich edge cases") {
  const Space s2 = Space::from_id("s2");
  // Hand-built net with one center: probes near the antipode are uncovered.
  BallNet net;
  net.space = s2;
  net.n = 1;
  net.epsilon = 0.25;
  net.delta = 0.5;
  net.radius_count = 10;
  net.centers = {basis_point(s2, 0)};
  const Point anti = make_point(s2, -basis_point(s2, 0).coords);
  CHECK_FALSE(sandwich(net, make_ball(s2, anti, 1.0)).has_value());
  // Oversized radius: both sandwich radii collapse to the top of the grid.
  const auto sw = sandwich(net, {basis_point(s2, 0), s2.diameter + 0.5});
  REQUIRE(sw.has_value());
  CHECK(sw->r1 == sw->r2);
  CHECK(sw->r1 == doctest::Approx(net.delta * (net.radius_count - 1)));
}

TEST_CASE("single point at a net center gives sup exactly 1") {
  const Space s2 = Space::from_id("s2");
  const BallNet net = build_net(s2, 2, 17);
  REQUIRE(!net.centers.empty());
  std::vector<Point> pts = {net.centers[0]};
  const DiscrepancyResult res = discrepancy_sup(s2, pts, net);
  // Just above r = 0 the ball holds the whole mass but no volume.
  CHECK(res.net_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.certified_upper == doctest::Approx(res.net_sup + res.slack));
  CHECK(res.slack == doctest::Approx(net_slack(net, 1)));
}

TEST_CASE("matches an independently coded per-center supremum") {
  const Space sp = Space::from_id("s2");
  const BallNet net = build_net(sp, 3, 19);
  RandomStream rng(47);
  std::vector<Point> pts;
  for (int i = 0; i < 37; ++i) pts.push_back(sample_uniform(sp, rng));
  const DiscrepancyResult res = discrepancy_sup(sp, pts, net);
  double want = 0.0;
  for (const Point& c : net.centers) {
    want = std::max(want, brute_center_sup(sp, pts, c, 37.0));
  }
  CHECK(res.net_sup == doctest::Approx(want).epsilon(1e-10));
  // The reported argmax actually attains the supremum.
  const double vol = ball_volume(sp, res.argmax_radius);
  const double at_argmax = std::abs(res.argmax_count - 37.0 * vol);
  CHECK(at_argmax == doctest::Approx(res.net_sup).epsilon(1e-6));
}

TEST_CASE("point order does not matter and workers agree") {
  const Space sp = Space::from_id("rp2");
  const BallNet net = build_net(sp, 2, 23);
  RandomStream rng(49);
  std::vector<Point> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(sample_uniform(sp, rng));
  const DiscrepancyResult a = discrepancy_sup(sp, pts, net, 1);
  std::vector<Point> shuffled(pts.rbegin(), pts.rend());
  const DiscrepancyResult b = discrepancy_sup(sp, shuffled, net, 1);
  const DiscrepancyResult c = discrepancy_sup(sp, pts, net, 4);
  CHECK(a.net_sup == b.net_sup);
  CHECK(a.net_sup == c.net_sup);
  CHECK(a.argmax_center == c.argmax_center);
}

TEST_CASE("iid uniform points land in the square-root regime") {
  const Space s2 = Space::from_id("s2");
  const BallNet net = build_net(s2, 4, 29);
  RandomStream rng(51);
  std::vector<Point> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(sample_uniform(s2, rng));
  const DiscrepancyResult res = discrepancy_sup(s2, pts, net);
  CHECK(res.net_sup >= 0.3 * 10.0);
  CHECK(res.net_sup <= 5.0 * 10.0);
}

TEST_CASE("slack formula") {
  const Space s2 = Space::from_id("s2");
  const BallNet net = build_net(s2, 4, 31);
  const double per_point =
      net.ahlfors_c2 * s2.dim_real * std::pow(s2.diameter, s2.dim_real - 1) / net.n;
  CHECK(net_slack(net, 50) == doctest::Approx(50.0 * per_point));
  CHECK(net_slack(net, 0) == doctest::Approx(0.0));
}

}  // TEST_SUITE
