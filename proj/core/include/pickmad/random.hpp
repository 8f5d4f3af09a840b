// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

namespace pickmad {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

/**
 * Counter-based splittable random stream.
 *
 * The i-th output is a pure function of (key, i): mix64(key + i * gamma).
 * Child streams are derived from the parent key and a child id, so a
 * simulation keyed by (master seed, copula, iteration) reproduces the same
 * draws no matter which worker thread runs it.
 */
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept : key_(mix64(seed ^ kSeedSalt)) {}

  /// Independent child stream; does not advance this stream.
  [[nodiscard]] RandomStream split(std::uint64_t id) const noexcept {
    return RandomStream(key_, mix64(id * kSplitGamma + kSplitOffset));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11U) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal draw (Marsaglia polar method, spare value cached).
  double normal() noexcept;

  /// Gamma(shape, 1) draw (Marsaglia-Tsang), shape > 0.
  double gamma(double shape) noexcept;

  /// Chi-squared draw with `dof` degrees of freedom.
  double chi_squared(double dof) noexcept { return 2.0 * gamma(0.5 * dof); }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  RandomStream(std::uint64_t parent_key, std::uint64_t child_mix) noexcept
      : key_(mix64(parent_key ^ child_mix)) {}

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSplitGamma = 0xD1B54A32D192ED03ULL;
  static constexpr std::uint64_t kSplitOffset = 0x8CB92BA72F3D8DD7ULL;
  static constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2DULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pickmad
