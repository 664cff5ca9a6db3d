// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include "../oracles.hpp"
#include "doctest.h"
#include "tweetsent/error.hpp"
#include "tweetsent/model.hpp"
#include "tweetsent/rng.hpp"

using namespace tweetsent;
using oracle::Dense;

namespace {

TrainingSet RandomSet(std::uint64_t seed, std::size_t n, std::size_t v) {
  Rng rng(seed);
  Dense rows(n, std::vector<double>(v));
  std::vector<SentimentLabel> labels;
  for (auto& r : rows) {
    for (auto& x : r) x = rng.Below(3) == 0 ? static_cast<double>(1 + rng.Below(3)) : 0.0;
    labels.push_back(LabelAt(rng.Below(3)));
  }
  return oracle::MakeTrainingSet(rows, labels, v);
}

std::string KindCase(ModelKind k) { return std::string(ModelKindName(k)); }

}  // namespace

TEST_SUITE("persistence") {
  TEST_CASE("every model kind round-trips through JSON") {
    const auto ts = RandomSet(1, 40, 9);
    ModelOptions opt;
    opt.maxent.epochs = 50;
    Rng rng(2);
    for (auto kind : kAllModelKinds) {
      CAPTURE(KindCase(kind));
      const auto model = TrainModel(kind, ts, opt);
      const std::string text = SerializeModel(model);
      const auto back = DeserializeModel(text);
      CHECK(SerializeModel(back) == text);
      CHECK(back.kind == model.kind);
      CHECK(*back.vocab == *model.vocab);
      CHECK(back.idf == model.idf);
      CHECK(back.body == model.body);
      for (int q = 0; q < 100; ++q) {
        std::vector<double> x(9);
        for (auto& e : x) e = rng.Below(2) ? static_cast<double>(rng.Below(4)) : 0.0;
        const auto a = PredictCounts(model, oracle::Sparse(x));
        const auto b = PredictCounts(back, oracle::Sparse(x));
        CHECK(a.label == b.label);
        CHECK(a.scores == b.scores);
      }
    }
  }

  TEST_CASE("trainers are pure functions of data and hyperparameters") {
    const auto ts = RandomSet(3, 30, 6);
    ModelOptions opt;
    opt.maxent.epochs = 20;
    for (auto kind : kAllModelKinds) {
      CHECK(SerializeModel(TrainModel(kind, ts, opt)) == SerializeModel(TrainModel(kind, ts, opt)));
    }
  }

  TEST_CASE("save and load through a file") {
    const auto ts = RandomSet(4, 20, 5);
    const auto model = TrainModel(ModelKind::kNaiveBayes, ts, {});
    const auto path = std::filesystem::temp_directory_path() / "tweetsent_model_test.json";
    SaveModel(model, path);
    const auto back = LoadModel(path);
    std::filesystem::remove(path);
    CHECK(std::get<NaiveBayesModel>(back.body) == std::get<NaiveBayesModel>(model.body));
    CHECK_THROWS_AS(LoadModel(path), Error);
  }

  TEST_CASE("bad model files") {
    const auto ts = RandomSet(5, 20, 5);
    std::string text = SerializeModel(TrainModel(ModelKind::kDecisionTree, ts, {}));
    auto message = [](const std::string& s) {
      try {
        DeserializeModel(s);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kData);
        return std::string(e.what());
      }
      FAIL("expected error");
      return std::string();
    };
    auto versioned = text;
    versioned.replace(versioned.find("\"format_version\":1"), 18, "\"format_version\":\"v9\"");
    CHECK(message(versioned).find("'v9'") != std::string::npos);
    auto numeric = text;
    numeric.replace(numeric.find("\"format_version\":1"), 18, "\"format_version\":2");
    CHECK(message(numeric).find("'2'") != std::string::npos);
    CHECK(message(text.substr(0, text.size() / 2)).find("truncated") != std::string::npos);
    message("");
    message("{}");
  }

  TEST_CASE("prediction rejects vectors outside the vocabulary") {
    const auto model = TrainModel(ModelKind::kLinearSvm, RandomSet(6, 20, 4), {});
    CHECK_THROWS_AS(PredictCounts(model, SparseVector{{7, 1.0}}), Error);
  }
}
