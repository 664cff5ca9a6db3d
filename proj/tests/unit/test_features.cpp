// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "tweetsent/error.hpp"
#include "tweetsent/features.hpp"
#include "tweetsent/rng.hpp"

using namespace tweetsent;

namespace {

using Docs = std::vector<std::vector<std::string>>;

}  // namespace

TEST_SUITE("features") {
  TEST_CASE("build_vocabulary") {
    const Docs docs = {{"a", "b"}, {"b", "c"}};
    const auto v1 = BuildVocabulary(docs, 1);
    CHECK(v1.Terms() == std::vector<std::string>{"a", "b", "c"});
    CHECK(v1.DocFreq() == std::vector<std::uint64_t>{1, 2, 1});
    CHECK(v1.FitDocs() == 2);
    CHECK(*v1.Find("c") == 2);
    CHECK_FALSE(v1.Find("z"));

    CHECK(BuildVocabulary(docs, 2).Terms() == std::vector<std::string>{"b"});
    CHECK(BuildVocabulary(Docs{{"a"}}, 1).Terms() == std::vector<std::string>{"a"});
    CHECK(BuildVocabulary(Docs{{"a", "a", "a"}}, 1).DocFreq()[0] == 1);
  }

  TEST_CASE("build_vocabulary errors") {
    CHECK_THROWS_AS(BuildVocabulary(Docs{}, 1), Error);
    CHECK_THROWS_AS(BuildVocabulary(Docs{{"a"}}, 0), Error);
    CHECK_THROWS_AS(Vocabulary({"a", "a"}, {1, 1}, 2), Error);
    CHECK_THROWS_AS(Vocabulary({"a"}, {3}, 2), Error);
  }

  TEST_CASE("vectorize_counts") {
    const Vocabulary vocab({"a", "b", "c"}, {1, 1, 1}, 1);
    const std::vector<std::string> toks = {"b", "b", "a"};
    CHECK(VectorizeCounts(vocab, toks) == SparseVector{{0, 1.0}, {1, 2.0}});
    CHECK(VectorizeCounts(vocab, std::vector<std::string>{}).empty());
    CHECK(VectorizeCounts(vocab, std::vector<std::string>{"x", "y"}).empty());
  }

  TEST_CASE("idf") {
    CHECK(Idf(4, 4) == 0.0);
    CHECK(Idf(4, 1) == doctest::Approx(1.386294).epsilon(1e-6));
    CHECK(Idf(4, 2) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK_THROWS_AS(Idf(4, 0), Error);
    CHECK_THROWS_AS(Idf(4, 5), Error);
    for (std::uint64_t n = 1; n < 50; ++n) {
      for (std::uint64_t df = 2; df <= n; ++df) CHECK(Idf(n, df) <= Idf(n, df - 1));
    }
  }

  TEST_CASE("tf-idf transform") {
    const Docs docs = {{"a", "b", "b"}, {"b", "c"}};
    auto vocab = std::make_shared<const Vocabulary>(BuildVocabulary(docs, 1));
    const auto counts = VectorizeCorpus(vocab, docs);
    const auto tfidf = TfidfTransform(counts);
    CHECK(tfidf.weighting == Weighting::kTfidf);
    // b occurs in every document, so its idf is 0 and the entry is dropped.
    REQUIRE(tfidf.rows[0].size() == 1);
    CHECK(tfidf.rows[0][0].column == 0);
    CHECK(tfidf.rows[0][0].weight == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(TfidfTransform(tfidf), Error);
  }

  TEST_CASE("doc_freq agrees with nonzero column counts") {
    Rng rng(3);
    Docs docs;
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> d;
      for (std::uint64_t k = rng.Below(6); k > 0; --k) d.push_back("t" + std::to_string(rng.Below(15)));
      docs.push_back(d);
    }
    docs.push_back({"t0"});
    auto vocab = std::make_shared<const Vocabulary>(BuildVocabulary(docs, 1));
    const auto m = VectorizeCorpus(vocab, docs);
    std::vector<std::uint64_t> nonzero(vocab->Size(), 0);
    for (const auto& row : m.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) CHECK(row[i - 1].column < row[i].column);
        CHECK(row[i].weight > 0.0);
        ++nonzero[row[i].column];
      }
    }
    CHECK(nonzero == vocab->DocFreq());
  }

  TEST_CASE("matrix dump") {
    const Docs docs = {{"a", "a"}, {"b"}};
    auto vocab = std::make_shared<const Vocabulary>(BuildVocabulary(docs, 1));
    std::ostringstream out;
    const std::vector<std::string> ids = {"d1", "d,2"};
    DumpMatrixCsv(out, VectorizeCorpus(vocab, docs), ids);
    CHECK(out.str() == "doc_id,term,weight\nd1,a,2\n\"d,2\",b,1\n");
  }

  TEST_CASE("weighting names") {
    CHECK(ParseWeighting("tfidf") == Weighting::kTfidf);
    CHECK(WeightingName(Weighting::kCounts) == "counts");
    CHECK_THROWS_AS(ParseWeighting("bm25"), Error);
  }
}
