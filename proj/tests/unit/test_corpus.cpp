// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tweetsent/corpus.hpp"
#include "tweetsent/error.hpp"
#include "tweetsent/rng.hpp"

using namespace tweetsent;

namespace {

std::vector<RawTweet> Parse(const std::string& text, CorpusFormat f = CorpusFormat::kJsonl) {
  std::istringstream in(text);
  return ParseCorpus(in, f);
}

std::string MessageOf(const std::string& text, CorpusFormat f = CorpusFormat::kJsonl) {
  try {
    Parse(text, f);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kData);
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

const char* kThree =
    R"({"id":"1","text":"Love KFC","created_at":"2018-02-01T06:30:00Z","topic":"kfc"})" "\n"
    R"({"id":"2","text":"meh","created_at":"2018-02-01T23:05:00Z","topic":"kfc"})" "\n"
    R"({"id":"3","text":"bad","created_at":"2018-02-01T23:59:00Z","topic":"kfc"})" "\n";

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("loads well-formed JSONL in file order") {
    const auto tweets = Parse(kThree);
    REQUIRE(tweets.size() == 3);
    CHECK(tweets[0].id == "1");
    CHECK(tweets[2].text == "bad");
    CHECK(tweets[1].topic == "kfc");
  }

  TEST_CASE("empty input gives an empty corpus") {
    CHECK(Parse("").empty());
    CHECK(Parse("\n\n").empty());
    CHECK(Parse("", CorpusFormat::kCsv).empty());
  }

  TEST_CASE("JSONL errors name the line, field or id") {
    const std::string missing =
        R"({"id":"1","text":"a","created_at":"2018-02-01T06:30:00Z","topic":"t"})" "\n"
        R"({"id":"2","created_at":"2018-02-01T06:30:00Z","topic":"t"})" "\n";
    const auto m1 = MessageOf(missing);
    CHECK(m1.find("line 2") != std::string::npos);
    CHECK(m1.find("'text'") != std::string::npos);

    const std::string dup =
        R"({"id":"x","text":"a","created_at":"2018-02-01T06:30:00Z","topic":"t"})" "\n"
        R"({"id":"x","text":"b","created_at":"2018-02-01T06:30:00Z","topic":"t"})" "\n";
    CHECK(MessageOf(dup).find("duplicate id 'x'") != std::string::npos);

    CHECK(MessageOf("{not json}\n").find("line 1") != std::string::npos);
    const std::string bad_time =
        R"({"id":"1","text":"a","created_at":"yesterday","topic":"t"})" "\n";
    CHECK(MessageOf(bad_time).find("created_at") != std::string::npos);
  }

  TEST_CASE("CSV with quoting, reordered columns and extra fields") {
    const std::string csv =
        "topic,id,extra,created_at,text\r\n"
        "kfc,1,z,2018-02-01T06:30:00Z,\"hello, \"\"world\"\"\"\r\n"
        "kfc,2,z,2018-02-01 07:00:00 UTC,\"multi\nline\"\n";
    const auto tweets = Parse(csv, CorpusFormat::kCsv);
    REQUIRE(tweets.size() == 2);
    CHECK(tweets[0].text == "hello, \"world\"");
    CHECK(tweets[1].text == "multi\nline");
    CHECK(FormatTimestamp(tweets[1].created_at) == "2018-02-01T07:00:00Z");
  }

  TEST_CASE("CSV errors") {
    CHECK(MessageOf("id,text,topic\n1,a,t\n", CorpusFormat::kCsv).find("created_at") !=
          std::string::npos);
    const auto m = MessageOf("id,text,created_at,topic\n1,a,2018-02-01T00:00:00Z\n",
                             CorpusFormat::kCsv);
    CHECK(m.find("record") != std::string::npos);
  }

  TEST_CASE("timestamps") {
    CHECK(FormatTimestamp(ParseTimestamp("2018-02-07T06:30:00Z")) == "2018-02-07T06:30:00Z");
    CHECK(FormatTimestamp(ParseTimestamp("2018-02-07T06:30:00.250Z")) == "2018-02-07T06:30:00Z");
    CHECK(FormatTimestamp(ParseTimestamp("2018-02-07T08:30:00+02:00")) == "2018-02-07T06:30:00Z");
    CHECK(FormatTimestamp(ParseTimestamp("2018-02-07T01:30:00-0500")) == "2018-02-07T06:30:00Z");
    CHECK_THROWS_AS(ParseTimestamp("2018-02-30T00:00:00Z"), Error);
    CHECK_THROWS_AS(ParseTimestamp("2018-02-07T25:00:00Z"), Error);
    CHECK_THROWS_AS(ParseTimestamp(""), Error);
  }

  TEST_CASE("round trip through both formats") {
    const auto tweets = Parse(kThree);
    for (auto f : {CorpusFormat::kJsonl, CorpusFormat::kCsv}) {
      std::ostringstream out;
      WriteCorpus(out, tweets, f);
      CHECK(Parse(out.str(), f) == tweets);
    }
  }

  TEST_CASE("clean_text examples") {
    CHECK(CleanText("Check http://t.co/x @user #KFC!!") == "check kfc");
    CHECK(CleanText("") == "");
    CHECK(CleanText("kfc") == "kfc");
    CHECK(CleanText("  I  don't   LIKE it ") == "i dont like it");
    CHECK(CleanText("see www.kfc.com and t.co/abc now") == "see and now");
    CHECK(CleanText("email me@example.com") == "email me example com");
    CHECK(CleanText("CAFÉ déjà vu") == "café déjà vu");
    CHECK(CleanText("yum\xF0\x9F\x98\x8B!") == "yum");
    CHECK(CleanText("#Love#KFC") == "lovekfc");
  }

  TEST_CASE("tokenize examples") {
    CHECK(Tokenize("", {}).empty());
    CHECK(Tokenize("love love kfc", {}) == std::vector<std::string>{"love", "love", "kfc"});
    CHECK(Tokenize("i love kfc", {"i"}) == std::vector<std::string>{"love", "kfc"});
  }

  TEST_CASE("clean documents satisfy the token invariants") {
    Rng rng(11);
    const std::string alphabet = "aZ9 #@'!.:/ht\t\xC3\xA9";
    for (int i = 0; i < 300; ++i) {
      RawTweet t;
      t.id = std::to_string(i);
      for (int k = 0; k < 30; ++k) t.text += alphabet[rng.Below(alphabet.size())];
      const auto doc = MakeCleanDocument(t, {"a"});
      for (const auto& tok : doc.tokens) {
        CHECK_FALSE(tok.empty());
        CHECK(tok != "a");
        CHECK(tok.find_first_of(" \t#@") == std::string::npos);
        for (char c : tok) CHECK_FALSE((c >= 'A' && c <= 'Z'));
      }
    }
  }

  TEST_CASE("hourly histogram") {
    const auto docs = CleanCorpus(Parse(kThree), {});
    const auto h = HourlyHistogram(docs);
    CHECK(h.bins[6] == 1);
    CHECK(h.bins[23] == 2);
    CHECK(h.Total() == 3);
    CHECK(HourlyHistogram({}).Total() == 0);
  }

  TEST_CASE("stopword file") {
    const auto path = std::filesystem::temp_directory_path() / "tweetsent_stopwords_test.txt";
    {
      std::ofstream out(path);
      out << "# comment\nthe\n\n a \n";
    }
    const auto s = LoadStopwords(path);
    std::filesystem::remove(path);
    CHECK(s.size() == 2);
    CHECK(s.count("the") == 1);
    CHECK(s.count("a") == 1);
  }
}
