#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ivams {

/// Seeded generator with platform-independent draws.
///
/// std::mt19937_64 produces a fully specified sequence, but the standard
/// distributions do not; the draws below are written out so that every run
/// with the same seed is bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Independent child stream; does not advance this generator.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

template <typename It>
void shuffle(It first, It last, Rng& rng) {
  auto n = static_cast<std::size_t>(last - first);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace ivams
