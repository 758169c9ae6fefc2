#pragma once

// Deterministic, splittable random streams.
//
// SplitMix64 is used both as the generator and as the seed mixer, so
// every trial gets an independent stream derived from (seed, index) and
// results do not depend on evaluation order. Doubles are produced from
// the top 53 bits, which keeps sequences identical across standard
// libraries (std::uniform_real_distribution is implementation-defined).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "conekit/space.hpp"

namespace conekit {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  /// Child stream for a given index. Children of distinct indices are independent.
  constexpr SplitMix64 split(std::uint64_t index) const noexcept {
    return SplitMix64(splitmix64_mix(state_ ^ splitmix64_mix(index + 0x632BE59BD9B4E019ULL)));
  }

  /// Uniform in [0, 1).
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  constexpr std::size_t index(std::size_t lo, std::size_t hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::size_t>((*this)() % span);
  }

 private:
  std::uint64_t state_;
};

/// Stream for trial `trial` of a run seeded with `seed`.
constexpr SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) noexcept {
  return SplitMix64(seed).split(trial);
}

/// Cone function with i.i.d. uniform [lo, hi) coordinates.
inline SampledFunction random_cone_function(const Domain& domain, SplitMix64& rng,
                                            double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(domain.size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return SampledFunction(domain, std::move(v));
}

/// Cone function of sup norm exactly 1: uniform [0,1) coordinates with one
/// uniformly chosen coordinate forced to 1.
inline SampledFunction random_unit_cone_function(const Domain& domain, SplitMix64& rng) {
  std::vector<double> v(domain.size());
  for (double& x : v) x = rng.uniform();
  v[rng.index(0, domain.size() - 1)] = 1.0;
  return SampledFunction(domain, std::move(v));
}

}  // namespace conekit
