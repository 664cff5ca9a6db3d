// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "tweetsent/error.hpp"

namespace tweetsent {

std::optional<SentimentLabel> ParseLabel(std::string_view name) {
  for (SentimentLabel label : kAllLabels) {
    if (LabelName(label) == name) return label;
  }
  return std::nullopt;
}

std::optional<Weight> ParseWeight(std::string_view text) {
  constexpr std::int64_t kMaxInteger = 1'000'000;
  constexpr std::size_t kMaxFraction = 9;
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::int64_t integer = 0;
  std::size_t int_digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    integer = integer * 10 + (text[i++] - '0');
    if (++int_digits > 7 || integer > kMaxInteger) return std::nullopt;
  }
  std::int64_t fraction = 0;
  std::int64_t scale = 1;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (++frac_digits > kMaxFraction) return std::nullopt;
      fraction = fraction * 10 + (text[i++] - '0');
      scale *= 10;
    }
  }
  if (i != text.size() || int_digits + frac_digits == 0) return std::nullopt;
  Weight w(integer * scale + fraction, scale);
  if (w > Weight(kMaxInteger)) return std::nullopt;
  return negative ? -w : w;
}

std::string FormatWeight(const Weight& w) {
  // Terminating decimals print as decimals, anything else as n/d.
  std::int64_t rest = w.denominator();
  int twos = 0, fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  if (rest != 1 || std::max(twos, fives) > 18) {
    return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
  }
  const auto den = static_cast<std::uint64_t>(w.denominator());
  const auto num = static_cast<std::uint64_t>(w.numerator() < 0 ? -w.numerator() : w.numerator());
  std::string out = (w.numerator() < 0 ? "-" : "") + std::to_string(num / den);
  std::uint64_t r = num % den;
  if (r) out += '.';
  while (r) {
    r *= 10;
    out += static_cast<char>('0' + r / den);
    r %= den;
  }
  return out;
}

void Lexicon::Set(std::string token, Weight weight) {
  if (token.empty()) ThrowUsage("lexicon token must be non-empty");
  for (char c : token) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ThrowUsage("lexicon token '" + token + "' contains whitespace");
    }
    if (c >= 'A' && c <= 'Z') ThrowUsage("lexicon token '" + token + "' is not lowercase");
  }
  entries_.insert_or_assign(std::move(token), weight);
}

Weight Lexicon::WeightOf(std::string_view token) const {
  const auto it = entries_.find(token);
  return it == entries_.end() ? Weight(0) : it->second;
}

bool Lexicon::Contains(std::string_view token) const { return entries_.find(token) != entries_.end(); }

Lexicon Lexicon::Scaled(const Weight& factor) const {
  Lexicon out;
  for (const auto& [token, weight] : entries_) out.entries_.emplace(token, weight * factor);
  return out;
}

LexiconLoadResult ParseLexicon(std::istream& in) {
  LexiconLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) ThrowData(where + ": expected token<TAB>weight");
    std::string token = line.substr(0, tab);
    std::string_view weight_text = std::string_view(line).substr(tab + 1);
    while (!weight_text.empty() && weight_text.back() == ' ') weight_text.remove_suffix(1);
    while (!weight_text.empty() && weight_text.front() == ' ') weight_text.remove_prefix(1);
    const auto weight = ParseWeight(weight_text);
    if (!weight) ThrowData(where + ": unparseable weight '" + std::string(weight_text) + "'");
    if (result.lexicon.Contains(token)) {
      result.warnings.push_back(where + ": duplicate token '" + token +
                                "' overrides earlier weight");
    }
    try {
      result.lexicon.Set(std::move(token), *weight);
    } catch (const Error& e) {
      ThrowData(where + ": " + e.what());
    }
  }
  if (result.lexicon.Size() == 0) ThrowData("lexicon has no entries");

  const auto& entries = result.lexicon.Entries();
  const bool has_pos = std::any_of(entries.begin(), entries.end(),
                                   [](const auto& e) { return e.second > Weight(0); });
  const bool has_neg = std::any_of(entries.begin(), entries.end(),
                                   [](const auto& e) { return e.second < Weight(0); });
  if (!has_pos) result.warnings.push_back("lexicon has no positive-weight entry");
  if (!has_neg) result.warnings.push_back("lexicon has no negative-weight entry");
  return result;
}

LexiconLoadResult LoadLexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open lexicon file '" + path.string() + "'");
  try {
    return ParseLexicon(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

Weight ScoreDocument(const Lexicon& lexicon, std::span<const std::string> tokens) {
  Weight score(0);
  for (const std::string& token : tokens) score += lexicon.WeightOf(token);
  return score;
}

SentimentLabel LabelForScore(const Weight& score) {
  if (score > Weight(0)) return SentimentLabel::kPositive;
  if (score < Weight(0)) return SentimentLabel::kNegative;
  return SentimentLabel::kNeutral;
}

SentimentLabel LabelDocument(const Lexicon& lexicon, std::span<const std::string> tokens) {
  return LabelForScore(ScoreDocument(lexicon, tokens));
}

void LabelCounts::Add(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kPositive: ++positive; break;
    case SentimentLabel::kNeutral: ++neutral; break;
    case SentimentLabel::kNegative: ++negative; break;
  }
}

LabeledCorpus LabelCorpus(const Lexicon& lexicon, std::span<const CleanDocument> docs) {
  LabeledCorpus out;
  out.docs.reserve(docs.size());
  for (const CleanDocument& doc : docs) {
    const Weight score = ScoreDocument(lexicon, doc.tokens);
    const SentimentLabel label = LabelForScore(score);
    out.counts.Add(label);
    out.docs.push_back(LabeledDocument{doc, label, score});
  }
  return out;
}

}  // namespace tweetsent
