// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace edusat {

/// SplitMix64 (Steele, Lea & Flood 2014). Fixed algorithm with no
/// platform-dependent distribution code, so sequences match everywhere.
/// `split(k)` derives an independent child stream without advancing the parent.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return finalize(state_);
  }

  /// Uniform in [0, bound) by modulo with rejection of the biased tail; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in the inclusive range [lo, hi].
  constexpr std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  constexpr double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr SplitMix64 split(std::uint64_t k) const {
    return SplitMix64(finalize(state_ ^ finalize((k + 1) * kGamma)));
  }

  constexpr std::uint64_t state() const { return state_; }

 private:
  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace edusat
