// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "tweetsent/tweetsent.h"

namespace fs = std::filesystem;

namespace {

const fs::path kDemo = fs::path(TWEETSENT_DATA_DIR) / "demo";

std::string Take(char* s) {
  std::string out = s ? s : "";
  ts_string_free(s);
  return out;
}

struct Fixture {
  ts_corpus* corpus = nullptr;
  ts_lexicon* lexicon = nullptr;
  ts_config* config = nullptr;

  Fixture() {
    REQUIRE(ts_corpus_load((kDemo / "kfc.jsonl").c_str(), "jsonl",
                           (kDemo / "stopwords.txt").c_str(), &corpus) == TS_OK);
    REQUIRE(ts_lexicon_load((kDemo / "lexicon.tsv").c_str(), &lexicon) == TS_OK);
    REQUIRE(ts_config_new(&config) == TS_OK);
  }
  ~Fixture() {
    ts_corpus_free(corpus);
    ts_lexicon_free(lexicon);
    ts_config_free(config);
  }
};

}  // namespace

TEST_SUITE("c_api") {
  TEST_CASE("basics") {
    CHECK(std::string(ts_version()) == "1.0.0");
    CHECK(std::string(ts_label_name(TS_LABEL_NEGATIVE)) == "negative");
    char* clean = nullptr;
    REQUIRE(ts_clean_text("Check http://t.co/x @user #KFC!!", &clean) == TS_OK);
    CHECK(Take(clean) == "check kfc");
    CHECK(ts_clean_text(nullptr, &clean) == TS_ERR_USAGE);
    CHECK(std::string(ts_last_error()).find("NULL") != std::string::npos);
    ts_string_free(nullptr);
  }

  TEST_CASE_FIXTURE(Fixture, "corpus, lexicon and labels") {
    CHECK(ts_corpus_size(corpus) == 500);
    uint64_t bins[24];
    REQUIRE(ts_corpus_hourly(corpus, bins) == TS_OK);
    uint64_t total = 0;
    for (auto b : bins) total += b;
    CHECK(total == 500);
    CHECK(ts_lexicon_size(lexicon) == 100);
    CHECK(ts_lexicon_warning_count(lexicon) == 0);
    double score = 0;
    int label = -1;
    REQUIRE(ts_lexicon_score(lexicon, "love it but cold fries hate", &score, &label) == TS_OK);
    CHECK(score == -1.0);
    CHECK(label == TS_LABEL_NEGATIVE);
    uint64_t counts[3];
    REQUIRE(ts_label_corpus(lexicon, corpus, nullptr, counts) == TS_OK);
    CHECK(counts[0] + counts[1] + counts[2] == 500);
  }

  TEST_CASE_FIXTURE(Fixture, "config") {
    REQUIRE(ts_config_set(config, "seed", "7") == TS_OK);
    char* v = nullptr;
    REQUIRE(ts_config_get(config, "seed", &v) == TS_OK);
    CHECK(Take(v) == "7");
    CHECK(ts_config_set(config, "model", "knn") == TS_ERR_USAGE);
    CHECK(std::string(ts_last_error()).find("knn") != std::string::npos);
    CHECK(ts_config_get(config, "nope", &v) == TS_ERR_USAGE);
  }

  TEST_CASE_FIXTURE(Fixture, "train, predict, save, load, evaluate") {
    ts_model* model = nullptr;
    REQUIRE(ts_model_train(config, corpus, lexicon, "naive_bayes", &model) == TS_OK);
    CHECK(std::string(ts_model_kind(model)) == "naive_bayes");
    CHECK(ts_model_vocabulary_size(model) > 50);
    int label = -1;
    double scores[3];
    REQUIRE(ts_model_predict_text(model, "Delicious crispy chicken, LOVE it!", &label, scores) ==
            TS_OK);
    CHECK(label == TS_LABEL_POSITIVE);
    CHECK(scores[0] + scores[1] + scores[2] == doctest::Approx(1.0));

    const auto path = fs::temp_directory_path() / ("tweetsent_capi_" + std::to_string(::getpid()));
    REQUIRE(ts_model_save(model, path.c_str()) == TS_OK);
    ts_model* loaded = nullptr;
    REQUIRE(ts_model_load(path.c_str(), &loaded) == TS_OK);
    fs::remove(path);
    int label2 = -1;
    double scores2[3];
    REQUIRE(ts_model_predict_text(loaded, "Delicious crispy chicken, LOVE it!", &label2,
                                  scores2) == TS_OK);
    CHECK(label2 == label);
    CHECK(std::memcmp(scores, scores2, sizeof scores) == 0);
    char* report = nullptr;
    REQUIRE(ts_model_evaluate(loaded, corpus, lexicon, &report) == TS_OK);
    CHECK(Take(report).find("\"accuracy\"") != std::string::npos);
    ts_model_free(model);
    ts_model_free(loaded);

    CHECK(ts_model_train(config, corpus, lexicon, "perceptron", &model) == TS_ERR_USAGE);
    CHECK(model == nullptr);
    CHECK(ts_model_load("/no/such/model.json", &model) == TS_ERR_DATA);
  }

  TEST_CASE_FIXTURE(Fixture, "cross-validation report") {
    REQUIRE(ts_config_set(config, "model", "svm,maxent") == TS_OK);
    REQUIRE(ts_config_set(config, "format", "csv") == TS_OK);
    char* report = nullptr;
    REQUIRE(ts_crossval(config, corpus, lexicon, &report) == TS_OK);
    const auto csv = Take(report);
    CHECK(csv.rfind("Algorithm,Precision,Recall,Fscore,CrossValidate-mean-accuracy\nSVM,", 0) == 0);
    CHECK(csv.find("\nMaxent,") != std::string::npos);
  }

  TEST_CASE("pipeline and compare") {
    ts_config* config = nullptr;
    REQUIRE(ts_config_load((kDemo / "config.json").c_str(), &config) == TS_OK);
    const auto out = fs::temp_directory_path() / ("tweetsent_capi_run_" + std::to_string(::getpid()));
    REQUIRE(ts_config_set(config, "out", out.c_str()) == TS_OK);
    REQUIRE(ts_config_set(config, "model", "naive_bayes,decision_tree") == TS_OK);
    char* summary = nullptr;
    REQUIRE(ts_run_pipeline(config, &summary) == TS_OK);
    CHECK(Take(summary).find("\"mcdonalds\"") != std::string::npos);
    fs::remove(out / "comparison.json");
    char* cmp = nullptr;
    REQUIRE(ts_compare_bundle(out.c_str(), "mcdonalds", "kfc", &cmp) == TS_OK);
    CHECK(Take(cmp).find("positive_share") != std::string::npos);
    CHECK(fs::exists(out / "comparison.json"));
    CHECK(ts_compare_bundle(out.c_str(), "mcdonalds", "wendys", &cmp) == TS_ERR_DATA);

    REQUIRE(ts_config_set(config, "lexicon", "/missing/lexicon.tsv") == TS_OK);
    CHECK(ts_run_pipeline(config, nullptr) == TS_ERR_USAGE);
    CHECK(std::string(ts_last_error()).find("/missing/lexicon.tsv") != std::string::npos);
    ts_config_free(config);
    fs::remove_all(out);
  }
}
