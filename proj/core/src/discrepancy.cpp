#include "dppdisc/discrepancy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dppdisc/errors.hpp"
#include "dppdisc/parallel.hpp"

namespace dppdisc {

namespace {

// Under 200*|set|+10^4 consecutive uniform rejections the probability that a
// cap of fixed volume stayed uncovered is astronomically small, which is the
// sense in which maximality is "declared" rather than proven.
std::uint64_t maximality_budget(std::size_t accepted) {
  return 200 * static_cast<std::uint64_t>(accepted) + 10000;
}

// Uniform-grid spatial hash over the ambient cube [-1,1]^3, used to make the
// separation test O(1) on S^2, by far the heaviest net-building case. The
// geodesic test d(p,q) >= eps is equivalent to the chord test
// |p-q| >= 2 sin(eps/2), so only the 27 cells around a proposal matter.
// Coordinates are kept packed inside the grid: the rejection test is the hot
// loop of net construction and must not chase per-point heap buffers.
class SphereGrid {
 public:
  explicit SphereGrid(double chord)
      : cell_(chord), per_side_(static_cast<int>(std::ceil(2.0 / chord))) {
    heads_.assign(static_cast<std::size_t>(per_side_) * per_side_ * per_side_, -1);
  }

  bool far_from_all(const double* q, double chord2) const {
    const std::array<int, 3> c = cell_of(q);
    // Nearest cells first (own, faces, edges, corners): almost every proposal
    // is rejected by a close point, so the scan usually ends within the first
    // few cells.
    static constexpr std::array<std::array<int, 3>, 27> kScanOrder = {{
        {0, 0, 0},
        {-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1},
        {-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {1, 1, 0},
        {-1, 0, -1}, {-1, 0, 1}, {1, 0, -1}, {1, 0, 1},
        {0, -1, -1}, {0, -1, 1}, {0, 1, -1}, {0, 1, 1},
        {-1, -1, -1}, {-1, -1, 1}, {-1, 1, -1}, {-1, 1, 1},
        {1, -1, -1}, {1, -1, 1}, {1, 1, -1}, {1, 1, 1},
    }};
    for (const auto& off : kScanOrder) {
      const int x = c[0] + off[0], y = c[1] + off[1], z = c[2] + off[2];
      if (x < 0 || y < 0 || z < 0 || x >= per_side_ || y >= per_side_ ||
          z >= per_side_) {
        continue;
      }
      for (int i = heads_[flat(x, y, z)]; i >= 0;
           i = next_[static_cast<std::size_t>(i)]) {
        const double* p = &packed_[3 * static_cast<std::size_t>(i)];
        const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
        if (dx * dx + dy * dy + dz * dz < chord2) return false;
      }
    }
    return true;
  }

  void insert(const double* q) {
    const std::array<int, 3> c = cell_of(q);
    const std::size_t cell = flat(c[0], c[1], c[2]);
    const int index = static_cast<int>(packed_.size() / 3);
    packed_.insert(packed_.end(), {q[0], q[1], q[2]});
    next_.push_back(heads_[cell]);
    heads_[cell] = index;
  }

 private:
  std::array<int, 3> cell_of(const double* q) const {
    std::array<int, 3> c;
    for (int k = 0; k < 3; ++k) {
      c[k] = std::clamp(static_cast<int>((q[k] + 1.0) / cell_), 0, per_side_ - 1);
    }
    return c;
  }
  std::size_t flat(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * per_side_ + y) * per_side_ + z;
  }

  double cell_;
  int per_side_;
  std::vector<int> heads_;
  std::vector<int> next_;
  std::vector<double> packed_;
};

}  // namespace

SeparatedSet max_separated_set(const Space& space, double epsilon,
                               RandomStream& rng, std::uint64_t proposal_cap) {
  if (!space.supports_points()) {
    throw validation_error("space '" + space.id + "' has no point model");
  }
  if (!(epsilon > 0.0)) throw validation_error("separation must be positive");

  SeparatedSet out;
  // A cap of 0 means automatic: a generous multiple of the declaration
  // threshold, large enough that the consecutive-rejection rule fires first
  // on any healthy run while a stuck run still terminates.
  auto cap_now = [&]() {
    return proposal_cap != 0
               ? proposal_cap
               : 100000000ull + 400ull * maximality_budget(out.centers.size());
  };
  const bool use_grid = space.kind == SpaceKind::sphere && space.index == 2 &&
                        epsilon < 0.5;
  const double chord = 2.0 * std::sin(std::min(epsilon, space.diameter) / 2.0);
  const double chord2 = chord * chord;

  if (use_grid) {
    SphereGrid grid(chord);
    std::uint64_t consecutive = 0;
    double q[3];
    while (consecutive < maximality_budget(out.centers.size())) {
      if (out.proposals >= cap_now()) {
        out.proposal_cap_hit = true;
        return out;
      }
      ++out.proposals;
      // Uniform S^2 draw on the stack, consuming the stream exactly as
      // sample_uniform does (three normals, retry on degenerate norm).
      double nrm;
      for (int tries = 0;; ++tries) {
        q[0] = rng.normal();
        q[1] = rng.normal();
        q[2] = rng.normal();
        nrm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
        if (nrm > 1e-12) break;
        if (tries >= 64) throw numerical_error("failed to draw a uniform point");
      }
      q[0] /= nrm;
      q[1] /= nrm;
      q[2] /= nrm;
      if (grid.far_from_all(q, chord2)) {
        grid.insert(q);
        Eigen::VectorXd v(3);
        v << q[0], q[1], q[2];
        out.centers.push_back(Point{std::move(v)});
        consecutive = 0;
      } else {
        ++consecutive;
      }
    }
    out.maximality_declared = true;
    return out;
  }

  std::uint64_t consecutive = 0;
  while (consecutive < maximality_budget(out.centers.size())) {
    if (out.proposals >= cap_now()) {
      out.proposal_cap_hit = true;
      return out;
    }
    ++out.proposals;
    Point p = sample_uniform(space, rng);
    bool separated = true;
    for (const Point& c : out.centers) {
      if (distance(space, p, c) < epsilon) {
        separated = false;
        break;
      }
    }
    if (separated) {
      out.centers.push_back(std::move(p));
      consecutive = 0;
    } else {
      ++consecutive;
    }
  }
  out.maximality_declared = true;
  return out;
}

double BallNet::exponent_c() const {
  const double dim_floor = static_cast<double>(space.dim_real) + 1.0;
  if (n <= 1) return dim_floor;
  const double grown = std::log(static_cast<double>(cardinality())) /
                       std::log(static_cast<double>(n));
  return std::max(grown, dim_floor);
}

BallNet build_net(const Space& space, int n, std::uint64_t seed) {
  if (n < 1) throw validation_error("net resolution must be >= 1");
  BallNet net;
  net.space = space;
  net.n = n;
  net.seed = seed;
  net.epsilon = 1.0 / (4.0 * n);
  net.delta = 1.0 / (2.0 * n);
  net.radius_count =
      static_cast<int>(std::ceil((space.diameter + 1.0 / n) / net.delta)) + 1;

  RandomStream center_rng(derive_seed(seed, seed_tag::net));
  SeparatedSet sep = max_separated_set(space, net.epsilon, center_rng);
  net.centers = std::move(sep.centers);
  net.maximality_declared = sep.maximality_declared;
  net.proposal_cap_hit = sep.proposal_cap_hit;

  const int dim = space.dim_real;
  net.observed_center_constant =
      static_cast<double>(net.centers.size()) / std::pow(n, dim);

  double c1 = std::numeric_limits<double>::infinity(), c2 = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double r = space.diameter * i / 1000.0;
    const double ratio = ball_volume(space, r) / std::pow(r, dim);
    c1 = std::min(c1, ratio);
    c2 = std::max(c2, ratio);
  }
  net.ahlfors_c1 = c1;
  net.ahlfors_c2 = c2;

  RandomStream probe_rng(derive_seed(seed, seed_tag::probe));
  double gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point p = sample_uniform(space, probe_rng);
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point& c : net.centers) {
      nearest = std::min(nearest, distance(space, p, c));
      if (nearest < net.epsilon * 0.5) break;
    }
    gap = std::max(gap, nearest);
  }
  net.covering_max_gap = gap;
  return net;
}

int count_in_ball(const Space& space, std::span<const Point> points,
                  const Ball& ball) {
  int count = 0;
  for (const Point& p : points) {
    if (distance(space, p, ball.center) < ball.radius) ++count;
  }
  return count;
}

std::optional<Sandwich> sandwich(const BallNet& net, const Ball& ball) {
  const Space& sp = net.space;
  double nearest = std::numeric_limits<double>::infinity();
  int best = -1;
  for (std::size_t i = 0; i < net.centers.size(); ++i) {
    const double d = distance(sp, ball.center, net.centers[i]);
    if (d < nearest) {
      nearest = d;
      best = static_cast<int>(i);
    }
  }
  if (best < 0 || nearest >= net.epsilon) return std::nullopt;

  Sandwich s;
  s.center_index = best;
  if (ball.radius > sp.diameter) {
    const double top = net.delta * (net.radius_count - 1);
    s.r1 = s.r2 = top;
    s.inner_empty = false;
    return s;
  }
  const double t = std::max(ball.radius - net.epsilon, 0.0);
  s.r1 = net.delta * std::floor(t / net.delta);
  s.r2 = s.r1 + 2.0 * net.delta;
  s.inner_empty = (s.r1 == 0.0);
  return s;
}

DiscrepancyResult discrepancy_sup(const Space& space,
                                  std::span<const Point> points,
                                  const BallNet& net, int workers) {
  const std::size_t n_points = points.size();
  const double scale = static_cast<double>(n_points);
  struct CenterBest {
    double sup = 0.0;
    double radius = 0.0;
    int count = 0;
  };
  std::vector<CenterBest> per_center(net.centers.size());

  parallel_for(net.centers.size(), workers, [&](std::size_t ci) {
    const Point& c = net.centers[ci];
    std::vector<double> d(n_points);
    for (std::size_t i = 0; i < n_points; ++i) d[i] = distance(space, points[i], c);
    std::sort(d.begin(), d.end());

    CenterBest best;
    double vol_lo = 0.0;  // N * vol at the interval's lower breakpoint
    for (std::size_t i = 0; i <= n_points; ++i) {
      const double lo = (i == 0) ? 0.0 : d[i - 1];
      const double hi = (i == n_points) ? space.diameter : d[i];
      const double vol_hi =
          (i == n_points) ? scale : scale * ball_volume(space, d[i]);
      if (lo < hi) {
        // On (lo, hi] the count is constant = i; the deviation is extremal at
        // the interval ends.
        const double over = static_cast<double>(i) - vol_lo;
        const double under = vol_hi - static_cast<double>(i);
        if (over > best.sup) {
          best.sup = over;
          best.radius = lo;
          best.count = static_cast<int>(i);
        }
        if (under > best.sup) {
          best.sup = under;
          best.radius = hi;
          best.count = static_cast<int>(i);
        }
      }
      vol_lo = vol_hi;
    }
    per_center[ci] = best;
  });

  DiscrepancyResult res;
  for (std::size_t ci = 0; ci < per_center.size(); ++ci) {
    if (per_center[ci].sup > res.net_sup) {
      res.net_sup = per_center[ci].sup;
      res.argmax_center = static_cast<int>(ci);
      res.argmax_radius = per_center[ci].radius;
      res.argmax_count = per_center[ci].count;
    }
  }
  res.slack = net_slack(net, static_cast<std::int64_t>(n_points));
  res.certified_upper = res.net_sup + res.slack;
  return res;
}

double net_slack(const BallNet& net, std::int64_t n_points) {
  const Space& sp = net.space;
  return static_cast<double>(n_points) * net.ahlfors_c2 * sp.dim_real *
         std::pow(sp.diameter, sp.dim_real - 1) / net.n;
}

}  // namespace dppdisc
