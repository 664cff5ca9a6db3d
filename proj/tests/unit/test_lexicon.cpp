// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "tweetsent/error.hpp"
#include "tweetsent/lexicon.hpp"
#include "tweetsent/rng.hpp"

using namespace tweetsent;

namespace {

LexiconLoadResult Load(const std::string& text) {
  std::istringstream in(text);
  return ParseLexicon(in);
}

Lexicon LoveHate() { return Load("love\t1\nhate\t-1\n").lexicon; }

std::vector<std::string> Toks(std::initializer_list<const char*> list) {
  return {list.begin(), list.end()};
}

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("load") {
    const auto r = Load("love\t1.0\nhate\t-1.0");
    CHECK(r.lexicon.Size() == 2);
    CHECK(r.warnings.empty());
    CHECK(r.lexicon.WeightOf("hate") == Weight(-1));
  }

  TEST_CASE("later duplicates override with a warning") {
    const auto r = Load("love\t1.0\nhate\t-1\nlove\t2.0\n");
    CHECK(r.lexicon.WeightOf("love") == Weight(2));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("love") != std::string::npos);
  }

  TEST_CASE("parse errors name the line") {
    try {
      Load("love\tabc\n");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kData);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(Load(""), Error);
    CHECK_THROWS_AS(Load("# only a comment\n"), Error);
    CHECK_THROWS_AS(Load("nouns\n"), Error);
  }

  TEST_CASE("one-sided lexicons load with a warning") {
    CHECK(Load("good\t1\n").warnings.size() == 1);
    CHECK(Load("bad\t-1\n").warnings.size() == 1);
  }

  TEST_CASE("weights") {
    CHECK(ParseWeight("-0.25") == Weight(-1, 4));
    CHECK(ParseWeight("+2.5") == Weight(5, 2));
    CHECK(ParseWeight("3") == Weight(3));
    CHECK_FALSE(ParseWeight("1e3"));
    CHECK_FALSE(ParseWeight(""));
    CHECK_FALSE(ParseWeight("."));
    CHECK_FALSE(ParseWeight("0.1234567891"));
    CHECK(FormatWeight(Weight(-1, 4)) == "-0.25");
    CHECK(FormatWeight(Weight(7, 2)) == "3.5");
    CHECK(FormatWeight(Weight(-3)) == "-3");
    CHECK(FormatWeight(Weight(1, 3)) == "1/3");
    CHECK(FormatWeight(Weight(1, 1000000000)) == "0.000000001");
  }

  TEST_CASE("score_document") {
    const auto lex = LoveHate();
    CHECK(ScoreDocument(lex, Toks({"love", "kfc"})) == Weight(1));
    CHECK(ScoreDocument(lex, Toks({})) == Weight(0));
    CHECK(ScoreDocument(lex, Toks({"love", "hate"})) == Weight(0));
    CHECK(ScoreDocument(lex, Toks({"love", "love"})) == Weight(2));
  }

  TEST_CASE("sign rule") {
    CHECK(LabelForScore(Weight(1)) == SentimentLabel::kPositive);
    CHECK(LabelForScore(Weight(0)) == SentimentLabel::kNeutral);
    CHECK(LabelForScore(Weight(-2)) == SentimentLabel::kNegative);
  }

  TEST_CASE("label_corpus") {
    const auto lex = LoveHate();
    CHECK(LabelCorpus(lex, {}).counts == LabelCounts{});
    std::vector<CleanDocument> docs(3);
    docs[0].tokens = Toks({"love"});
    docs[1].tokens = Toks({"kfc"});
    docs[2].tokens = Toks({"hate"});
    const auto r = LabelCorpus(lex, docs);
    CHECK(r.counts == LabelCounts{1, 1, 1});
    CHECK(r.docs[2].label == SentimentLabel::kNegative);
    CHECK(*r.docs[0].score == Weight(1));
    std::vector<CleanDocument> plain(4);
    for (auto& d : plain) d.tokens = Toks({"burger", "fries"});
    CHECK(LabelCorpus(lex, plain).counts.neutral == 4);
  }

  TEST_CASE("additivity, permutation and scale invariance") {
    Rng rng(5);
    Lexicon lex;
    std::vector<std::string> vocab;
    for (int i = 0; i < 12; ++i) {
      vocab.push_back("w" + std::to_string(i));
      lex.Set(vocab.back(), Weight(static_cast<std::int64_t>(rng.Below(9)) - 4, 3));
    }
    vocab.push_back("unknown");
    auto draw = [&] {
      std::vector<std::string> d;
      for (std::uint64_t k = rng.Below(7); k > 0; --k) d.push_back(vocab[rng.Below(vocab.size())]);
      return d;
    };
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = draw();
      const auto b = draw();
      auto ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      CHECK(ScoreDocument(lex, ab) == ScoreDocument(lex, a) + ScoreDocument(lex, b));
      auto shuffled = ab;
      rng.Shuffle(std::span<std::string>(shuffled));
      CHECK(ScoreDocument(lex, shuffled) == ScoreDocument(lex, ab));
      for (const Weight c : {Weight(1, 2), Weight(2), Weight(10)}) {
        CHECK(LabelDocument(lex.Scaled(c), ab) == LabelDocument(lex, ab));
      }
    }
  }

  TEST_CASE("invalid tokens are rejected") {
    Lexicon lex;
    CHECK_THROWS_AS(lex.Set("", Weight(1)), Error);
    CHECK_THROWS_AS(lex.Set("two words", Weight(1)), Error);
    CHECK_THROWS_AS(lex.Set("Love", Weight(1)), Error);
  }
}
