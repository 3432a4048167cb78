#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dppdisc {

// Finalizer from the splitmix64 generator. Good avalanche, cheap, and stable
// across platforms; used to derive independent substream seeds from a master
// seed plus structural indices (replicate number, chunk number, purpose tag).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix64(mix64(mix64(mix64(master) ^ a) ^ b) ^ c);
}

// Purpose tags keep substreams for different roles disjoint even when the
// structural indices coincide.
namespace seed_tag {
inline constexpr std::uint64_t replicate = 0x7265706C69636174ULL;
inline constexpr std::uint64_t pair_chunk = 0x7061697263686E6BULL;
inline constexpr std::uint64_t net = 0x6E65742D63747273ULL;
inline constexpr std::uint64_t probe = 0x70726F62652D7074ULL;
inline constexpr std::uint64_t row = 0x7363616E2D726F77ULL;
}  // namespace seed_tag

// Deterministic random stream. mt19937_64 supplies raw bits; the uniform and
// normal extractions are written out here instead of using <random>
// distributions, whose output sequences the standard leaves unspecified.
// Identical seeds therefore give identical streams on every toolchain.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    have_cached_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace dppdisc
