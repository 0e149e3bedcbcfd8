#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace seev2x {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for a sub-stream identified by `tags` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

/// Seeded pseudo-random stream with platform-independent draws.
/// std::mt19937_64 is fully specified by the standard; the conversion to
/// doubles is done here rather than through <random> distributions, whose
/// output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Exponential variate with the given rate (1/mean). One draw.
  double exponential(double rate);

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace seev2x
