// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

// Writes the synthetic demo corpora and lexicon into a directory.
//
//   make_demo_data OUT_DIR [SEED]
//
// Positive and negative tweets draw sentiment words from disjoint pools that
// the lexicon scores +1 / -1; neutral tweets draw from a third pool of
// informational words the lexicon does not score. All share filler words. Every
// tweet carries some mix of URLs, mentions, hashtags, emoji and casing noise.

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "tweetsent/corpus.hpp"
#include "tweetsent/rng.hpp"

namespace {

namespace fs = std::filesystem;
using tweetsent::Rng;

constexpr std::array<std::string_view, 30> kPositive = {
    "love",      "great",    "delicious", "amazing", "tasty",     "awesome",
    "best",      "yummy",    "fantastic", "excellent", "happy",   "perfect",
    "fresh",     "crispy",   "enjoyed",   "wonderful", "favorite", "friendly",
    "impressed", "juicy",    "recommend", "superb",  "satisfied", "glad",
    "fast",      "brilliant", "lovely",   "nice",    "incredible", "win"};

constexpr std::array<std::string_view, 30> kNegative = {
    "hate",     "awful",   "terrible", "disgusting", "worst",     "cold",
    "soggy",    "rude",    "slow",     "gross",      "bad",       "stale",
    "overpriced", "horrible", "sick", "disappointed", "greasy",  "nasty",
    "burnt",    "wrong",   "dirty",    "bland",      "angry",     "ruined",
    "mess",     "annoyed", "poor",     "fail",       "regret",    "broken"};

// Present in the lexicon, absent from the generated tweets.
constexpr std::array<std::string_view, 20> kPositiveExtra = {
    "adore", "beautiful", "cheerful", "charming", "delightful", "excited", "fabulous",
    "generous", "grateful", "heavenly", "joy", "kind", "marvelous", "outstanding",
    "pleasant", "satisfying", "smooth", "spectacular", "terrific", "thanks"};
constexpr std::array<std::string_view, 20> kNegativeExtra = {
    "abysmal", "appalling", "boring", "cheap", "complaint", "dreadful", "filthy",
    "frustrated", "inedible", "lousy", "mediocre", "miserable", "pathetic", "raw",
    "refund", "sad", "scam", "unhappy", "useless", "yuck"};

constexpr std::array<std::string_view, 40> kFiller = {
    "just",    "got",     "some",    "fries",   "burger",  "chicken", "lunch",   "dinner",
    "today",   "with",    "friends", "drive",   "thru",    "order",   "meal",    "the",
    "a",       "my",      "at",      "for",     "and",     "was",     "went",    "after",
    "work",    "tonight", "line",    "nuggets", "wings",   "combo",   "menu",    "new",
    "store",   "near",    "home",    "coffee",  "drink",   "sauce",   "bucket",  "sandwich"};

// Informational cues for neutral tweets (announcements, news, logistics).
constexpr std::array<std::string_view, 20> kInform = {
    "announces", "opening", "location", "hours",    "update",   "report",  "launch",
    "available", "official", "statement", "schedule", "branch",  "delivery", "franchise",
    "press",     "shares",   "quarterly", "released",  "nationwide", "limited"};

constexpr std::array<std::string_view, 6> kHandles = {"foodie",  "nightowl",  "dan_99",
                                                      "newsdesk", "campuslife", "mom_of3"};
constexpr std::array<std::string_view, 5> kEmoji = {"\xF0\x9F\x98\x8B", "\xF0\x9F\x8D\x94",
                                                    "\xF0\x9F\x98\xA1", "\xF0\x9F\x98\x82",
                                                    "\xF0\x9F\x94\xA5"};
constexpr std::array<std::string_view, 4> kPunct = {"!", "!!", ".", "?"};

template <typename Pool>
std::string_view Pick(Rng& rng, const Pool& pool) {
  return pool[rng.Below(pool.size())];
}

std::string Capitalize(std::string_view word, Rng& rng) {
  std::string out(word);
  const auto roll = rng.Below(10);
  if (roll == 0) {
    for (auto& c : out) c = static_cast<char>(c - ('a' <= c && c <= 'z' ? 32 : 0));
  } else if (roll < 3 && !out.empty() && 'a' <= out[0] && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 32);
  }
  return out;
}

struct TopicProfile {
  std::string name;
  std::string display;          // hashtag and mention form
  std::array<int, 3> mix;       // percent positive / neutral / negative
  std::array<int, 24> hourly;   // relative posting weight per UTC hour
};

std::size_t Weighted(Rng& rng, const std::array<int, 24>& weights) {
  int total = 0;
  for (int w : weights) total += w;
  auto r = static_cast<int>(rng.Below(static_cast<std::uint64_t>(total)));
  for (std::size_t h = 0; h < weights.size(); ++h) {
    if (r < weights[h]) return h;
    r -= weights[h];
  }
  return weights.size() - 1;
}

std::string MakeText(Rng& rng, const TopicProfile& topic, int polarity) {
  std::vector<std::string> words;
  const auto fillers = 3 + rng.Below(6);
  for (std::uint64_t i = 0; i < fillers; ++i) words.emplace_back(Pick(rng, kFiller));
  {
    const auto hits = 1 + rng.Below(3);
    for (std::uint64_t i = 0; i < hits; ++i) {
      const auto word = polarity > 0   ? Pick(rng, kPositive)
                        : polarity < 0 ? Pick(rng, kNegative)
                                       : Pick(rng, kInform);
      const auto at = rng.Below(words.size() + 1);
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), std::string(word));
    }
  }
  std::string text;
  if (rng.Below(4) == 0) text += "@" + std::string(Pick(rng, kHandles)) + " ";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text += ' ';
    text += Capitalize(words[i], rng);
  }
  switch (rng.Below(3)) {
    case 0: text += " #" + topic.display; break;
    case 1: text += " @" + topic.display; break;
    default: text += " " + topic.name; break;
  }
  text += Pick(rng, kPunct);
  if (rng.Below(3) == 0) text += " " + std::string(Pick(rng, kEmoji));
  if (rng.Below(4) == 0) {
    static constexpr std::string_view kAlnum = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string slug;
    for (int i = 0; i < 8; ++i) slug += kAlnum[rng.Below(kAlnum.size())];
    text += rng.Below(2) ? " https://t.co/" + slug : " http://example.com/p/" + slug;
  }
  return text;
}

std::vector<tweetsent::RawTweet> MakeCorpus(const TopicProfile& topic, std::uint64_t seed,
                                            std::uint64_t stream, std::size_t n) {
  Rng rng(seed, stream);
  // Fixed class quotas, shuffled, so the distribution is exact.
  std::vector<int> polarity;
  const std::size_t pos = n * static_cast<std::size_t>(topic.mix[0]) / 100;
  const std::size_t neu = n * static_cast<std::size_t>(topic.mix[1]) / 100;
  polarity.insert(polarity.end(), pos, 1);
  polarity.insert(polarity.end(), neu, 0);
  polarity.insert(polarity.end(), n - pos - neu, -1);
  rng.Shuffle(std::span<int>(polarity));

  const auto day0 = std::chrono::sys_days{std::chrono::year{2018} / 2 / 1};
  std::vector<tweetsent::RawTweet> tweets;
  for (std::size_t i = 0; i < n; ++i) {
    tweetsent::RawTweet t;
    t.id = topic.name + "-" + std::to_string(i + 1);
    t.topic = topic.name;
    t.text = MakeText(rng, topic, polarity[i]);
    const auto day = std::chrono::days{static_cast<int>(rng.Below(7))};
    const auto hour = std::chrono::hours{static_cast<int>(Weighted(rng, topic.hourly))};
    const auto sec = std::chrono::seconds{static_cast<int>(rng.Below(3600))};
    t.created_at = std::chrono::sys_seconds{day0 + day} + hour + sec;
    tweets.push_back(std::move(t));
  }
  return tweets;
}

void WriteLexicon(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "# Demonstration lexicon for the synthetic corpora in this directory.\n"
         "# Hand-written for testing; it is not the lexicon of any published study.\n"
         "# Format: token<TAB>weight\n";
  for (auto w : kPositive) out << w << "\t1\n";
  for (auto w : kPositiveExtra) out << w << "\t1\n";
  for (auto w : kNegative) out << w << "\t-1\n";
  for (auto w : kNegativeExtra) out << w << "\t-1\n";
}

void WriteStopwords(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "# Small English stopword list\n";
  for (auto w : {"a", "an", "and", "at", "for", "i", "my", "the", "to", "was", "with"}) {
    out << w << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: make_demo_data OUT_DIR [SEED]\n";
    return 1;
  }
  const fs::path dir = argv[1];
  std::uint64_t seed = 20180201;
  if (argc == 3) {
    const std::string_view s = argv[2];
    if (std::from_chars(s.data(), s.data() + s.size(), seed).ec != std::errc{}) {
      std::cerr << "bad seed '" << s << "'\n";
      return 1;
    }
  }
  fs::create_directories(dir);

  const TopicProfile mcd{"mcdonalds",
                      "McDonalds",
                      {38, 26, 36},
                      {6, 5, 4, 3, 3, 2, 1, 1, 1, 1, 2, 2, 5, 6, 6, 5, 6, 7, 8, 8, 9, 9, 8, 7}};
  const TopicProfile kfc{"kfc",
                      "KFC",
                      {30, 40, 30},
                      {4, 3, 2, 2, 1, 1, 1, 2, 2, 3, 4, 6, 8, 7, 5, 5, 6, 8, 9, 8, 7, 6, 5, 5}};
  std::uint64_t stream = 0;
  for (const auto* topic : {&mcd, &kfc}) {
    const auto tweets = MakeCorpus(*topic, seed, stream++, 500);
    std::ofstream out(dir / (topic->name + ".jsonl"), std::ios::binary);
    tweetsent::WriteCorpus(out, tweets, tweetsent::CorpusFormat::kJsonl);
  }
  WriteLexicon(dir / "lexicon.tsv");
  WriteStopwords(dir / "stopwords.txt");
  std::cout << "wrote demo data to " << dir.string() << "\n";
  return 0;
}
