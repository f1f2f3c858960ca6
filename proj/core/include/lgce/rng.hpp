#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace lgce {

/// SplitMix64 generator (Steele, Lea & Flood 2014): the state is a 64-bit
/// counter advanced by the golden-ratio increment and passed through a fixed
/// mixing function. Every derived distribution below is implemented here
/// rather than taken from <random>, whose distributions differ between
/// standard libraries, so a seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), counter_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Standard normal via Box-Muller (one output per two uniforms).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace lgce
