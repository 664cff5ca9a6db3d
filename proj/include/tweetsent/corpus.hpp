// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_CORPUS_HPP
#define TWEETSENT_CORPUS_HPP

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tweetsent {

using Timestamp = std::chrono::sys_seconds;

struct RawTweet {
  std::string id;
  std::string text;
  Timestamp created_at;
  std::string topic;

  friend bool operator==(const RawTweet&, const RawTweet&) = default;
};

struct CleanDocument {
  std::string id;
  std::vector<std::string> tokens;
  std::string topic;
  Timestamp created_at;

  friend bool operator==(const CleanDocument&, const CleanDocument&) = default;
};

using StopwordSet = std::unordered_set<std::string>;

enum class CorpusFormat { kJsonl, kCsv };

CorpusFormat ParseCorpusFormat(std::string_view name);

/// Parses an ISO-8601 instant such as "2018-02-07T06:30:00Z". Accepts a space
/// instead of 'T', optional fractional seconds (truncated), and a trailing
/// "Z", " UTC", or numeric offset (converted to UTC). Throws Error(kData).
Timestamp ParseTimestamp(std::string_view text);

/// Canonical "YYYY-MM-DDTHH:MM:SSZ" rendering.
std::string FormatTimestamp(Timestamp ts);

/// Reads tweets in file order. Rejects malformed records, missing fields and
/// duplicate ids with an Error(kData) naming the line/record, field or id.
std::vector<RawTweet> LoadCorpus(const std::filesystem::path& path, CorpusFormat format);
std::vector<RawTweet> ParseCorpus(std::istream& in, CorpusFormat format);

void WriteCorpus(std::ostream& out, std::span<const RawTweet> tweets, CorpusFormat format);

/// Normalizes tweet text. The rules run in this fixed order:
///   1. ASCII and Latin-1 letters lowercased
///   2. URLs (http://, https://, www., t.co/ up to whitespace) removed
///   3. @mentions removed
///   4. '#' dropped, hashtag word kept
///   5. apostrophes deleted; other punctuation, symbols and emoji become spaces
///   6. whitespace collapsed and trimmed
/// Idempotent. Letters outside Latin-1/Latin Extended-A/B count as symbols.
std::string CleanText(std::string_view raw);

/// Splits a cleaned string on spaces, dropping empty tokens and stopwords.
std::vector<std::string> Tokenize(std::string_view clean, const StopwordSet& stopwords);

/// One token per line; lines starting with '#' and blank lines are ignored.
StopwordSet LoadStopwords(const std::filesystem::path& path);

CleanDocument MakeCleanDocument(const RawTweet& tweet, const StopwordSet& stopwords);
std::vector<CleanDocument> CleanCorpus(std::span<const RawTweet> tweets,
                                       const StopwordSet& stopwords);

struct HourHistogram {
  std::array<std::uint64_t, 24> bins{};

  std::uint64_t Total() const;
  friend bool operator==(const HourHistogram&, const HourHistogram&) = default;
};

HourHistogram HourlyHistogram(std::span<const CleanDocument> docs);

}  // namespace tweetsent

#endif  // TWEETSENT_CORPUS_HPP
