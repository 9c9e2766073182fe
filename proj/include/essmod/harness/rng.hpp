#pragma once
// Counter-based generator: value i of stream `seed` is splitmix64(seed + (i+1) * golden).
// See docs/rng.md for the exact definition.

#include <complex>
#include <cstdint>
#include <string_view>

namespace essmod::harness {

std::uint64_t splitmix64(std::uint64_t z) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept : seed_(seed), counter_(counter) {}

  /// Independent stream for a named sub-task (property name, trial index, ...).
  static CounterRng stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  /// 53-bit uniform double in [0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi] via next_u64() mod (hi - lo + 1).
  long integer(long lo, long hi) noexcept;
  bool coin() noexcept { return (next_u64() >> 63) != 0; }
  std::complex<double> complex_uniform() noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace essmod::harness
