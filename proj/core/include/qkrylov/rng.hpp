#pragma once

#include <cmath>
#include <cstdint>

namespace qkrylov {

/// splitmix64 mixing step (Steele, Lea, Flood 2014). Used both as a small
/// PRNG and as the hash for deriving independent substreams, so that results
/// are reproducible across platforms and execution orders.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t s = seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  return splitmix64(s);
}

template <typename... Rest>
constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value,
                                     Rest... rest) {
  return hash_combine(hash_combine(seed, value), rest...);
}

/// Deterministic stream of doubles and gaussians. std::normal_distribution is
/// not pinned by the standard, so the Box-Muller transform is done by hand;
/// identical seeds give identical sequences everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in (0, 1]: 53 mantissa bits, never exactly 0.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the sine branch is discarded so every
  /// draw consumes exactly two uniforms regardless of call pattern.
  double next_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qkrylov
