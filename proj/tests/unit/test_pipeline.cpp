// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "tweetsent/error.hpp"
#include "tweetsent/pipeline.hpp"

using namespace tweetsent;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TWEETSENT_DATA_DIR;

fs::path Scratch(const std::string& tag) {
  const auto dir = fs::temp_directory_path() /
                   ("tweetsent_pipeline_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig Demo(const fs::path& out) {
  auto c = LoadRunConfig(kData / "demo" / "config.json");
  c.out_dir = out;
  return c;
}

TopicReport Report(const std::string& topic, LabelCounts counts) {
  TopicReport r;
  r.topic = topic;
  r.documents = counts.Total();
  r.distribution = counts;
  return r;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("config parsing") {
    const auto c = ParseRunConfig(R"({"topics":[{"name":"a","corpus":"a.csv","format":"csv"}],
        "lexicon":"lex.tsv","models":["svm","maxent"],"folds":5,"seed":7,
        "weighting":{"svm":"counts"},"hyperparameters":{"svm":{"epochs":3}}})",
                                  "/base");
    CHECK(c.topics.at(0).corpus == fs::path("/base/a.csv"));
    CHECK(c.topics[0].format == CorpusFormat::kCsv);
    CHECK(c.lexicon == fs::path("/base/lex.tsv"));
    CHECK(c.models == std::vector<ModelKind>{ModelKind::kLinearSvm, ModelKind::kMaxEnt});
    CHECK(c.folds == 5);
    CHECK(c.options.svm.seed == 7);
    CHECK(c.options.svm.epochs == 3);
    CHECK(c.options.WeightingFor(ModelKind::kLinearSvm) == Weighting::kCounts);
    CHECK_THROWS_AS(ParseRunConfig(R"({"bogus":1})", "."), Error);
    CHECK_THROWS_AS(ParseRunConfig("{", "."), Error);
    CHECK_THROWS_AS(ParseModelList("svm,knn"), Error);
  }

  TEST_CASE("flag overrides") {
    RunConfig c;
    SetConfigValue(c, "seed", "9");
    SetConfigValue(c, "model", "all");
    SetConfigValue(c, "topic", "kfc=x.jsonl");
    SetConfigValue(c, "topic", "mcd=y.csv:csv");
    CHECK(c.seed == 9);
    CHECK(c.options.forest.seed == 9);
    CHECK(c.models.size() == 6);
    CHECK(c.topics.size() == 2);
    CHECK(c.topics[1].format == CorpusFormat::kCsv);
    CHECK_THROWS_AS(SetConfigValue(c, "folds", "many"), Error);
    CHECK_THROWS_AS(SetConfigValue(c, "colour", "red"), Error);
  }

  TEST_CASE("validation") {
    auto c = Demo("unused");
    c.folds = 1;
    CHECK_THROWS_AS(ValidateRunConfig(c), Error);
    c = Demo("unused");
    c.lexicon = "/no/such/lexicon.tsv";
    try {
      ValidateRunConfig(c);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUsage);
      CHECK(std::string(e.what()).find("/no/such/lexicon.tsv") != std::string::npos);
    }
    c = Demo("unused");
    c.topics.push_back(c.topics[0]);
    CHECK_THROWS_AS(ValidateRunConfig(c), Error);
  }

  TEST_CASE("demo run writes the bundle") {
    const auto dir = Scratch("bundle");
    std::vector<std::string> log;
    const auto result = RunPipeline(Demo(dir), [&](std::string_view s) { log.emplace_back(s); });
    CHECK(result.stages == std::vector<std::string>(kPipelineStages.begin(), kPipelineStages.end()));
    CHECK(log.front() == "stage ingest");
    for (const char* topic : {"mcdonalds", "kfc"}) {
      const std::string t = topic;
      const auto csv = Slurp(dir / ("metrics_" + t + ".csv"));
      CHECK(csv.rfind("Algorithm,Precision,Recall,Fscore,CrossValidate-mean-accuracy\n", 0) == 0);
      CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
      const auto hourly = Slurp(dir / ("hourly_" + t + ".csv"));
      CHECK(std::count(hourly.begin(), hourly.end(), '\n') == 25);
      const auto dist = nlohmann::json::parse(Slurp(dir / ("distribution_" + t + ".json")));
      CHECK(dist["positive"].get<int>() + dist["neutral"].get<int>() +
                dist["negative"].get<int>() ==
            dist["documents"].get<int>());
    }
    const auto manifest = nlohmann::json::parse(Slurp(dir / "manifest.json"));
    CHECK(manifest["files"].size() == result.files.size());
    for (const auto& f : manifest["files"]) {
      const auto content = Slurp(dir / f["path"].get<std::string>());
      CHECK(Sha256Hex(content) == f["sha256"].get<std::string>());
      CHECK(content.size() == f["bytes"].get<std::size_t>());
    }
    CHECK(result.comparison.has_value());

    const auto a = LoadTopicReport(dir, "mcdonalds");
    CHECK(a.models.size() == 6);
    CHECK(a.distribution == result.reports[0].distribution);
    fs::remove_all(dir);
  }

  TEST_CASE("failed runs name the stage and leave no files") {
    const auto dir = Scratch("fail");
    const auto bad_corpus = fs::temp_directory_path() / "tweetsent_bad_corpus.jsonl";
    {
      std::ofstream out(bad_corpus);
      out << R"({"id":"1","text":"x","created_at":"2018-02-01T00:00:00Z","topic":"t"})" "\n"
          << "{broken\n";
    }
    auto c = Demo(dir);
    c.topics.resize(1);
    c.topics[0].corpus = bad_corpus;
    try {
      RunPipeline(c);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kData);
      CHECK(std::string(e.what()).find("stage 'ingest'") != std::string::npos);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
    fs::remove(bad_corpus);
    fs::remove_all(dir);
  }

  TEST_CASE("compare_topics") {
    const auto a = Report("a", {10, 0, 0});
    const auto b = Report("b", {0, 0, 10});
    const auto cmp = CompareTopics(a, b);
    CHECK(cmp.first.positive_share == 1.0);
    CHECK(cmp.second.positive_share == 0.0);
    CHECK_FALSE(cmp.first.positive_negative_ratio.has_value());
    CHECK(*cmp.second.positive_negative_ratio == 0.0);

    const auto same = CompareTopics(a, a);
    CHECK(same.document_difference == 0);
    for (const auto& d : same.deltas) {
      CHECK(d.precision == 0.0);
      CHECK(d.f1 == 0.0);
    }
    CHECK(ComparisonJson(same).find("winner") == std::string::npos);
  }

  TEST_CASE("hourly csv") {
    HourHistogram h;
    h.bins[6] = 3;
    const auto csv = HourlyCsv(h);
    CHECK(csv.rfind("hour,count\n0,0\n", 0) == 0);
    CHECK(csv.find("\n6,3\n") != std::string::npos);
  }
}
