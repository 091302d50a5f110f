#pragma once

// Portable, reproducible random streams. Standard library distributions are
// implementation-defined, so every variate here is computed explicitly from
// raw 64-bit output:
//   generator  xoshiro256** (Blackman & Vigna), state filled by splitmix64
//   uniform    top 53 bits scaled by 2^-53, giving [0, 1)
//   normal     Box-Muller, cosine branch, one normal per two uniforms
//   streams    splitmix64 over (master seed, index, FNV-1a(tag))

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace coopnet {

inline constexpr std::string_view kRngAlgorithm =
    "xoshiro256** seeded by splitmix64; uniform=53-bit; normal=Box-Muller(cos); "
    "streams=splitmix64(seed,index,fnv1a64(tag))";

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for an independent stream identified by (master, index, tag).
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                           std::string_view tag) noexcept {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ index;
  h = splitmix64(s);
  s = h ^ fnv1a64(tag);
  return splitmix64(s);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  double normal(double mean = 0.0, double stddev = 1.0) noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

}  // namespace coopnet
