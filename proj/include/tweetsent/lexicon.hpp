// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_LEXICON_HPP
#define TWEETSENT_LEXICON_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "tweetsent/corpus.hpp"
#include "tweetsent/label.hpp"

namespace tweetsent {

/// Exact polarity weight. Decimal weights from lexicon files are represented
/// without rounding, so sign decisions never depend on floating-point error.
using Weight = boost::rational<std::int64_t>;

/// Parses a signed decimal ("1", "-0.25", "+2.5"). At most 9 fractional
/// digits and magnitude at most 1e6. Returns nullopt on anything else.
std::optional<Weight> ParseWeight(std::string_view text);

std::string FormatWeight(const Weight& w);

class Lexicon {
 public:
  Lexicon() = default;

  /// Inserts or overrides. Throws Error(kUsage) if the token is empty,
  /// contains whitespace, or has uppercase ASCII letters.
  void Set(std::string token, Weight weight);

  /// Weight of a token, 0 for tokens absent from the lexicon.
  Weight WeightOf(std::string_view token) const;

  bool Contains(std::string_view token) const;
  std::size_t Size() const { return entries_.size(); }
  const std::map<std::string, Weight, std::less<>>& Entries() const { return entries_; }

  /// Copy with every weight multiplied by factor.
  Lexicon Scaled(const Weight& factor) const;

 private:
  std::map<std::string, Weight, std::less<>> entries_;
};

struct LexiconLoadResult {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

/// Reads `token<TAB>weight` lines; '#' lines and blank lines are skipped.
/// Later duplicates override earlier ones with a warning. A lexicon lacking a
/// positive or a negative entry loads with a warning. Parse failures and
/// empty files throw Error(kData).
LexiconLoadResult LoadLexicon(const std::filesystem::path& path);
LexiconLoadResult ParseLexicon(std::istream& in);

Weight ScoreDocument(const Lexicon& lexicon, std::span<const std::string> tokens);

/// Sign rule: positive score -> Positive, negative -> Negative, zero -> Neutral.
SentimentLabel LabelForScore(const Weight& score);

SentimentLabel LabelDocument(const Lexicon& lexicon, std::span<const std::string> tokens);

struct LabeledDocument {
  CleanDocument doc;
  SentimentLabel label = SentimentLabel::kNeutral;
  std::optional<Weight> score;  // absent for externally supplied gold labels
};

struct LabelCounts {
  std::uint64_t positive = 0;
  std::uint64_t neutral = 0;
  std::uint64_t negative = 0;

  std::uint64_t Total() const { return positive + neutral + negative; }
  void Add(SentimentLabel label);
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct LabeledCorpus {
  std::vector<LabeledDocument> docs;
  LabelCounts counts;
};

LabeledCorpus LabelCorpus(const Lexicon& lexicon, std::span<const CleanDocument> docs);

}  // namespace tweetsent

#endif  // TWEETSENT_LEXICON_HPP
