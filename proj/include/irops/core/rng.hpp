#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace irops {

/// Seeded random stream built on std::mt19937_64.
///
/// The engine's output sequence is fixed by the standard. The distributions
/// are implemented here rather than taken from <random>, whose algorithms are
/// implementation-defined; this keeps generated data identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n), unbiased. n must be positive.
  std::uint64_t index(std::uint64_t n);

  /// Standard normal via the Box-Muller transform (one draw per call).
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Child stream whose seed is a function of this stream's seed and a label.
  /// Forking does not consume draws from the parent.
  [[nodiscard]] Rng fork(std::string_view label) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive well-mixed child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for a named stage derived from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept;

}  // namespace irops
