// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_LABEL_HPP
#define TWEETSENT_LABEL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tweetsent {

// Declaration order is the canonical order used for every tie-break.
enum class SentimentLabel : std::uint8_t { kPositive = 0, kNeutral = 1, kNegative = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<SentimentLabel, kNumLabels> kAllLabels = {
    SentimentLabel::kPositive, SentimentLabel::kNeutral, SentimentLabel::kNegative};

constexpr std::size_t LabelIndex(SentimentLabel label) {
  return static_cast<std::size_t>(label);
}

constexpr SentimentLabel LabelAt(std::size_t index) {
  return static_cast<SentimentLabel>(index);
}

constexpr std::string_view LabelName(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kPositive: return "positive";
    case SentimentLabel::kNeutral: return "neutral";
    case SentimentLabel::kNegative: return "negative";
  }
  return "unknown";
}

std::optional<SentimentLabel> ParseLabel(std::string_view name);

/// Set of labels, stored as a bitmask over the canonical order.
class LabelSet {
 public:
  constexpr LabelSet() = default;

  constexpr void Insert(SentimentLabel label) { bits_ |= Bit(label); }
  constexpr bool Contains(SentimentLabel label) const { return (bits_ & Bit(label)) != 0; }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr std::size_t Size() const {
    return ((bits_ >> 0) & 1u) + ((bits_ >> 1) & 1u) + ((bits_ >> 2) & 1u);
  }
  constexpr std::uint8_t Bits() const { return bits_; }
  static constexpr LabelSet FromBits(std::uint8_t bits) {
    LabelSet set;
    set.bits_ = bits & 0x7u;
    return set;
  }

  friend constexpr bool operator==(LabelSet, LabelSet) = default;

 private:
  static constexpr std::uint8_t Bit(SentimentLabel label) {
    return static_cast<std::uint8_t>(1u << LabelIndex(label));
  }
  std::uint8_t bits_ = 0;
};

/// Per-class scores indexed by LabelIndex. Absent classes hold 0.
using LabelScores = std::array<double, kNumLabels>;

}  // namespace tweetsent

#endif  // TWEETSENT_LABEL_HPP
