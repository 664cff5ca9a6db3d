// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_RNG_HPP
#define TWEETSENT_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tweetsent {

/// Deterministic, splittable generator.
///
/// Each (seed, stream) pair selects an independent std::mt19937_64 seeded via
/// std::seed_seq over the four 32-bit halves {seed_lo, seed_hi, stream_lo,
/// stream_hi}. Both algorithms are fully specified by the standard, and all
/// derived draws below avoid the implementation-defined std distributions,
/// so sequences are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t NextU64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tweetsent

#endif  // TWEETSENT_RNG_HPP
