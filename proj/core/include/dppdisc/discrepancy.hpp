#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dppdisc/rng.hpp"
#include "dppdisc/space.hpp"

namespace dppdisc {

// Greedily grown epsilon-separated point set (which is then also an
// epsilon-covering once maximal). Proposals are uniform; the set is declared
// maximal after 200*|set| + 10^4 consecutive rejections.
struct SeparatedSet {
  std::vector<Point> centers;
  bool maximality_declared = false;  // the rejection budget was reached
  bool proposal_cap_hit = false;     // the absolute proposal cap fired first
  std::uint64_t proposals = 0;
};

// proposal_cap is a hang guard only: 0 (the default) sizes it automatically
// as a generous multiple of the current declaration threshold, so termination
// is decided by the consecutive-rejection rule, not the cap. When the cap
// does fire, the set built so far is returned with proposal_cap_hit set.
SeparatedSet max_separated_set(const Space& space, double epsilon,
                               RandomStream& rng,
                               std::uint64_t proposal_cap = 0);

// Finite certification net for metric-ball counts: centers form a maximal
// (1/(4n))-separated set and the radius grid steps by 1/(2n) up to one step
// past the diameter. Every metric ball is sandwiched between two net balls
// of the same center whose volumes differ by at most an explicit slack.
struct BallNet {
  Space space;
  int n = 1;                 // resolution parameter
  double epsilon = 0.0;      // 1/(4n), center separation
  double delta = 0.0;        // 1/(2n), radius step
  int radius_count = 0;      // grid 0, delta, ..., (radius_count-1) delta
  std::vector<Point> centers;
  bool maximality_declared = false;
  bool proposal_cap_hit = false;
  std::uint64_t seed = 0;

  // Extremes of vol(B(x, r)) / r^dim over a 1000-point radius grid; used in
  // the certified slack term.
  double ahlfors_c1 = 0.0;
  double ahlfors_c2 = 0.0;

  // Largest distance from 1000 uniform probe points to their nearest center;
  // a statistical check of the covering property (should be < epsilon).
  double covering_max_gap = 0.0;

  double observed_center_constant = 0.0;  // |centers| / n^dim

  std::int64_t cardinality() const {
    return static_cast<std::int64_t>(centers.size()) * radius_count + 1;
  }

  // Exponent c with |net| <= 4 c n^c used in deviation thresholds:
  // max(log |net| / log n, dim + 1).
  double exponent_c() const;
};

BallNet build_net(const Space& space, int n, std::uint64_t seed);

// Number of points in the open ball {y : d(y, center) < radius}.
int count_in_ball(const Space& space, std::span<const Point> points,
                  const Ball& ball);

// Net balls B(s, r1) subset B(x, r) subset B(s, r2) around the nearest net
// center s, with vol(r2) - vol(r1) bounded by the net slack. Empty when the
// ball's center is not covered by any net center (net construction failed).
struct Sandwich {
  int center_index = -1;
  double r1 = 0.0;
  double r2 = 0.0;
  bool inner_empty = false;  // r1 == 0: the inner ball is empty
};

std::optional<Sandwich> sandwich(const BallNet& net, const Ball& ball);

// Supremum over all net centers and ALL radii r in (0, diameter] of
// |#(points in B(s, r)) - N vol(B(s, r))|, evaluated exactly from the sorted
// distance breakpoints, plus the certified slack that extends the bound from
// net balls to every metric ball.
struct DiscrepancyResult {
  double net_sup = 0.0;
  double slack = 0.0;
  double certified_upper = 0.0;  // net_sup + slack
  int argmax_center = -1;
  double argmax_radius = 0.0;
  int argmax_count = 0;
};

DiscrepancyResult discrepancy_sup(const Space& space,
                                  std::span<const Point> points,
                                  const BallNet& net, int workers = 1);

// Certified slack N c2 dim diameter^{dim-1} / n: the worst-case volume gap of
// a sandwich pair, scaled to counts.
double net_slack(const BallNet& net, std::int64_t n_points);

}  // namespace dppdisc
