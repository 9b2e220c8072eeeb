#pragma once

#include <cstdint>

namespace uscale {

/// Counter-based pseudo-random stream.
///
/// Draw number k of stream `seed` is splitmix64_mix(seed + (k + 1) * golden),
/// where golden = 0x9E3779B97F4A7C15 and splitmix64_mix is the SplitMix64
/// output finalizer. The sequence depends only on (seed, counter), so it is
/// identical on every platform and any draw can be reproduced directly.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  /// Independent stream for task `index` of a campaign seeded with `seed`.
  static RngStream split(std::uint64_t seed, std::uint64_t index) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open_zero() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

}  // namespace uscale
