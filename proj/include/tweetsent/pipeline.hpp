// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_PIPELINE_HPP
#define TWEETSENT_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetsent/corpus.hpp"
#include "tweetsent/eval.hpp"
#include "tweetsent/lexicon.hpp"
#include "tweetsent/model.hpp"

namespace tweetsent {

struct TopicInput {
  std::string name;
  std::filesystem::path corpus;
  CorpusFormat format = CorpusFormat::kJsonl;
};

struct RunConfig {
  std::vector<TopicInput> topics;
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> stopwords;
  std::uint64_t min_df = 1;
  std::vector<ModelKind> models{kAllModelKinds.begin(), kAllModelKinds.end()};
  ModelOptions options;
  std::size_t folds = 4;
  std::uint64_t seed = 42;
  bool stratified = false;
  std::filesystem::path out_dir = "report";
  std::string output_format = "json";  // json | csv, for single-command output
  unsigned threads = 1;
};

/// Parses the declarative JSON config. Relative paths resolve against
/// base_dir. Unknown keys are rejected. Throws Error(kUsage).
RunConfig ParseRunConfig(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

/// Applies one flag override: seed, folds, model, lexicon, stopwords, min_df,
/// out, format, topic ("name=path[:csv]"), threads, stratified.
void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value);

/// Checks referenced files exist, k >= 2, and 1 or 2 topics.
void ValidateRunConfig(const RunConfig& config);

/// Selects the model list from "all" or a comma-separated list of names.
std::vector<ModelKind> ParseModelList(std::string_view text);

struct ModelReport {
  ModelKind kind = ModelKind::kNaiveBayes;
  Weighting weighting = Weighting::kCounts;
  CVResult cv;
  ClassMetrics macro;  // from the pooled out-of-fold confusion matrix
};

struct TopicReport {
  std::string topic;
  std::uint64_t documents = 0;
  std::size_t vocabulary_size = 0;
  LabelCounts distribution;
  HourHistogram hourly;
  std::vector<ModelReport> models;
};

struct DistributionSummary {
  std::string topic;
  std::uint64_t documents = 0;
  LabelCounts counts;
  double positive_share = 0.0;
  double neutral_share = 0.0;
  double negative_share = 0.0;
  std::optional<double> positive_negative_ratio;  // absent when there are no negatives
};

struct MetricDelta {
  ModelKind kind = ModelKind::kNaiveBayes;
  double precision = 0.0;  // first topic minus second topic
  double recall = 0.0;
  double f1 = 0.0;
  double cv_accuracy = 0.0;
};

/// Side-by-side numbers; deliberately no verdict.
struct TopicComparison {
  DistributionSummary first;
  DistributionSummary second;
  std::int64_t document_difference = 0;
  std::vector<MetricDelta> deltas;  // models present in both reports
};

DistributionSummary SummarizeDistribution(const TopicReport& report);
TopicComparison CompareTopics(const TopicReport& a, const TopicReport& b);

// Report bundle files. All writers are deterministic.
std::string MetricsCsv(const TopicReport& report);
std::string MetricsJson(const TopicReport& report);
std::string DistributionJson(const TopicReport& report);
std::string HourlyCsv(const HourHistogram& hist);
std::string ComparisonJson(const TopicComparison& comparison);

/// Rebuilds the parts of a TopicReport that CompareTopics needs from
/// distribution_<topic>.json and metrics_<topic>.json. Throws Error(kData).
TopicReport LoadTopicReport(const std::filesystem::path& dir, std::string_view topic);

/// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

using LogSink = std::function<void(std::string_view)>;

struct PipelineResult {
  std::vector<TopicReport> reports;
  std::optional<TopicComparison> comparison;
  std::vector<std::string> stages;  // in execution order
  std::map<std::string, std::string> files;  // relative path -> sha256, manifest excluded
};

inline constexpr std::array<std::string_view, 7> kPipelineStages = {
    "ingest", "clean", "label", "featurize", "train", "evaluate", "report"};

/// ingest -> clean -> label -> featurize -> train -> evaluate -> report.
/// Errors carry the failing stage's name; files already written by this run
/// are removed before the error propagates.
PipelineResult RunPipeline(const RunConfig& config, const LogSink& log = {});

// Building blocks shared with the C API.

struct LabeledData {
  std::vector<CleanDocument> docs;
  std::vector<SentimentLabel> labels;
  LabelCounts counts;
};

LabeledData LabelDocuments(const Lexicon& lexicon, std::vector<CleanDocument> docs);

/// Fits a vocabulary on the documents and returns the counts training set.
TrainingSet BuildTrainingSet(const LabeledData& data, std::uint64_t min_df);

ModelReport CrossValidateModel(ModelKind kind, const TrainingSet& counts, const RunConfig& config);

/// Per-class and macro metrics plus confusion matrix of a model on labeled data.
std::string EvaluationJson(const Model& model, const LabeledData& data);

}  // namespace tweetsent

#endif  // TWEETSENT_PIPELINE_HPP
