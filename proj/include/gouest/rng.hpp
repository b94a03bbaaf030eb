#pragma once

#include <cstdint>
#include <limits>

namespace gouest {

/// Counter-based 64-bit generator: the k-th output is a SplitMix64
/// finalizer applied to key + k * golden-ratio increment. A stream is fully
/// determined by its key, so independent streams are obtained by keying
/// with derive_seed(seed, index) rather than by skipping ahead.
///
/// Satisfies UniformRandomBitGenerator (std and Boost.Random).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key for the index-th independent stream under a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace gouest
