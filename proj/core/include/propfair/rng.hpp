#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace propfair {

// SplitMix64 generator (Vigna's mixer). Chosen because it is trivially
// seedable, splittable via derive_stream below, and bit-reproducible on any
// platform. Every random draw in the simulator flows through this type; there
// is no ambient entropy anywhere.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Sub-stream key derivation rule: mix `word` into `key` through the SplitMix64
// finalizer. Streams are keyed hierarchically,
//   trial_key = derive_stream(base_seed, trial_index)
//   user_key  = derive_stream(trial_key, user_index)
// so any single trial (and any single user channel within it) can be
// regenerated in isolation.
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t word) {
  return detail::splitmix64_finalize(key ^ ((word + 1) * 0x9E3779B97F4A7C15ULL));
}

// Uniform double in (0, 1]; never returns 0 so log() is safe.
inline double uniform01(SplitMix64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller pair of independent standard normal samples.
inline std::pair<double, double> standard_normal_pair(SplitMix64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

// Fisher-Yates shuffle of 0..n-1.
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace propfair
