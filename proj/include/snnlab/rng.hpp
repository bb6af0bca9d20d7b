#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace snnlab {

// Counter-based deterministic RNG (splitmix64 core). The entire state is one
// 64-bit word, so identical seed + identical call sequence gives identical
// output on every platform, and the state serializes as a single integer.
//
// Gaussian draws use the Box-Muller transform and always consume exactly two
// uniforms per call (the second variate is discarded, never cached), so the
// draw count stays a pure function of the call sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Integer in [lo, hi] inclusive. Modulo bias is < 2^-32 for the ranges used
  // here (all tiny compared to 2^64).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  // N(0, sigma^2). sigma == 0 returns exactly 0.
  double gaussian(double sigma) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    if (sigma == 0.0) return 0.0;
    // Guard u1 == 0 so the log stays finite.
    const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-53));
    const double theta = 6.283185307179586476925286766559 * u2;
    return sigma * r * std::cos(theta);
  }

  std::vector<double> gaussian_vector(std::size_t dim, double sigma) {
    std::vector<double> out(dim);
    for (auto& v : out) v = gaussian(sigma);
    return out;
  }

  // Independent stream derived from this generator's seed and a stream id.
  // Pure function of (seed, id): parallel workers can derive their own
  // streams without touching the parent state.
  Rng derive(std::uint64_t id) const {
    Rng mixer(seed_ ^ (0xD6E8FEB86659FD93ULL * (id + 1)));
    return Rng(mixer.next_u64());
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t state() const { return state_; }
  void set_state(std::uint64_t s) { state_ = s; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace snnlab
