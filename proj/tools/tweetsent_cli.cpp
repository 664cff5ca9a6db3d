// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tweetsent/tweetsent.h"

namespace {

// Carries a status out of a subcommand.
struct Failure {
  ts_status status;
  std::string message;
};

void Check(ts_status status) {
  if (status != TS_OK) throw Failure{status, ts_last_error()};
}

void Usage(const std::string& message) { throw Failure{TS_ERR_USAGE, message}; }

struct CorpusDeleter {
  void operator()(ts_corpus* p) const { ts_corpus_free(p); }
};
struct LexiconDeleter {
  void operator()(ts_lexicon* p) const { ts_lexicon_free(p); }
};
struct ModelDeleter {
  void operator()(ts_model* p) const { ts_model_free(p); }
};
struct ConfigDeleter {
  void operator()(ts_config* p) const { ts_config_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { ts_string_free(p); }
};
using CorpusPtr = std::unique_ptr<ts_corpus, CorpusDeleter>;
using LexiconPtr = std::unique_ptr<ts_lexicon, LexiconDeleter>;
using ModelPtr = std::unique_ptr<ts_model, ModelDeleter>;
using ConfigPtr = std::unique_ptr<ts_config, ConfigDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> seed;
  std::optional<std::string> folds;
  std::optional<std::string> model;
  std::optional<std::string> lexicon;
  std::optional<std::string> stopwords;
  std::optional<std::string> min_df;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> threads;
  std::vector<std::string> topics;
  bool stratified = false;
  bool verbose = false;
};

struct InputFlags {
  std::string path;
  std::string format = "jsonl";
};

void AddCommon(CLI::App& app, CommonFlags& f) {
  app.add_option("--config", f.config, "Run configuration file (JSON)");
  app.add_option("--seed", f.seed, "Random seed (default 42)");
  app.add_option("--folds", f.folds, "Cross-validation folds (default 4)");
  app.add_option("--model", f.model, "Model name, comma list, or 'all'");
  app.add_option("--lexicon", f.lexicon, "Polarity lexicon (TSV)");
  app.add_option("--stopwords", f.stopwords, "Stopword list, one token per line");
  app.add_option("--min-df", f.min_df, "Minimum document frequency (default 1)");
  app.add_option("--out", f.out, "Output path or directory");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", f.threads, "Worker threads for ensembles and folds");
}

void AddInput(CLI::App& app, InputFlags& in) {
  app.add_option("--input", in.path, "Tweet corpus file")->required();
  app.add_option("--input-format", in.format, "Corpus format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
}

// Config file first, then flags on top.
ConfigPtr BuildConfig(const CommonFlags& f) {
  ts_config* raw = nullptr;
  if (f.config) {
    Check(ts_config_load(f.config->c_str(), &raw));
  } else {
    Check(ts_config_new(&raw));
  }
  ConfigPtr config(raw);
  auto set = [&](const char* key, const std::optional<std::string>& value) {
    if (value) Check(ts_config_set(config.get(), key, value->c_str()));
  };
  set("seed", f.seed);
  set("folds", f.folds);
  set("model", f.model);
  set("lexicon", f.lexicon);
  set("stopwords", f.stopwords);
  set("min_df", f.min_df);
  set("out", f.out);
  set("format", f.format);
  set("threads", f.threads);
  if (f.stratified) Check(ts_config_set(config.get(), "stratified", "true"));
  if (!f.topics.empty()) {
    Check(ts_config_set(config.get(), "clear_topics", ""));
    for (const auto& t : f.topics) Check(ts_config_set(config.get(), "topic", t.c_str()));
  }
  return config;
}

std::string ConfigValue(const ts_config* config, const char* key) {
  char* raw = nullptr;
  Check(ts_config_get(config, key, &raw));
  StringPtr value(raw);
  return value.get();
}

CorpusPtr LoadCorpus(const InputFlags& in, const ts_config* config) {
  const std::string stopwords = ConfigValue(config, "stopwords");
  ts_corpus* raw = nullptr;
  Check(ts_corpus_load(in.path.c_str(), in.format.c_str(),
                       stopwords.empty() ? nullptr : stopwords.c_str(), &raw));
  return CorpusPtr(raw);
}

LexiconPtr LoadLexicon(const ts_config* config) {
  const std::string path = ConfigValue(config, "lexicon");
  if (path.empty()) Usage("a lexicon is required (--lexicon or config 'lexicon')");
  ts_lexicon* raw = nullptr;
  Check(ts_lexicon_load(path.c_str(), &raw));
  LexiconPtr lexicon(raw);
  for (size_t i = 0; i < ts_lexicon_warning_count(lexicon.get()); ++i) {
    std::cerr << "warning: " << ts_lexicon_warning(lexicon.get(), i) << "\n";
  }
  return lexicon;
}

void PrintOwned(char* text) {
  StringPtr owned(text);
  std::cout << owned.get();
}

void RunIngest(const CommonFlags& f, const InputFlags& in) {
  auto config = BuildConfig(f);
  auto corpus = LoadCorpus(in, config.get());
  if (f.out) Check(ts_corpus_write_clean(corpus.get(), f.out->c_str()));
  uint64_t bins[24];
  Check(ts_corpus_hourly(corpus.get(), bins));
  std::cout << "documents " << ts_corpus_size(corpus.get()) << "\n";
  std::cout << "hour,count\n";
  for (int h = 0; h < 24; ++h) std::cout << h << "," << bins[h] << "\n";
}

void RunLabel(const CommonFlags& f, const InputFlags& in) {
  auto config = BuildConfig(f);
  auto lexicon = LoadLexicon(config.get());
  auto corpus = LoadCorpus(in, config.get());
  uint64_t counts[3];
  Check(ts_label_corpus(lexicon.get(), corpus.get(), f.out ? f.out->c_str() : nullptr, counts));
  std::cout << "positive " << counts[TS_LABEL_POSITIVE] << "\n"
            << "neutral " << counts[TS_LABEL_NEUTRAL] << "\n"
            << "negative " << counts[TS_LABEL_NEGATIVE] << "\n";
}

void RunTrain(const CommonFlags& f, const InputFlags& in) {
  if (!f.model || f.model->find(',') != std::string::npos || *f.model == "all") {
    Usage("train needs exactly one --model");
  }
  if (!f.out) Usage("train needs --out for the model file");
  auto config = BuildConfig(f);
  auto lexicon = LoadLexicon(config.get());
  auto corpus = LoadCorpus(in, config.get());
  ts_model* raw = nullptr;
  Check(ts_model_train(config.get(), corpus.get(), lexicon.get(), f.model->c_str(), &raw));
  ModelPtr model(raw);
  Check(ts_model_save(model.get(), f.out->c_str()));
  std::cout << ts_model_kind(model.get()) << " vocabulary " << ts_model_vocabulary_size(model.get())
            << " -> " << *f.out << "\n";
}

void RunEvaluate(const CommonFlags& f, const InputFlags& in, const std::string& model_path) {
  auto config = BuildConfig(f);
  auto lexicon = LoadLexicon(config.get());
  auto corpus = LoadCorpus(in, config.get());
  ts_model* raw = nullptr;
  Check(ts_model_load(model_path.c_str(), &raw));
  ModelPtr model(raw);
  char* report = nullptr;
  Check(ts_model_evaluate(model.get(), corpus.get(), lexicon.get(), &report));
  PrintOwned(report);
}

void RunCrossval(const CommonFlags& f, const InputFlags& in) {
  auto config = BuildConfig(f);
  auto lexicon = LoadLexicon(config.get());
  auto corpus = LoadCorpus(in, config.get());
  char* report = nullptr;
  Check(ts_crossval(config.get(), corpus.get(), lexicon.get(), &report));
  PrintOwned(report);
}

void RunReport(const CommonFlags& f) {
  auto config = BuildConfig(f);
  char* summary = nullptr;
  Check(ts_run_pipeline(config.get(), &summary));
  PrintOwned(summary);
}

void RunCompare(const CommonFlags& f, const std::vector<std::string>& names) {
  auto config = BuildConfig(f);
  const std::string dir = ConfigValue(config.get(), "out");
  char* comparison = nullptr;
  Check(ts_compare_bundle(dir.c_str(), names[0].c_str(), names[1].c_str(), &comparison));
  PrintOwned(comparison);
}

void LogToStderr(const char* message, void*) { std::cerr << message << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-labelled tweet sentiment toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ts_version());

  CommonFlags common;
  InputFlags input;
  std::string model_path;
  std::vector<std::string> compare_names;

  auto* ingest = app.add_subcommand("ingest", "Load and clean a corpus; print the hourly histogram");
  auto* label = app.add_subcommand("label", "Weak-label a corpus with the lexicon");
  auto* train = app.add_subcommand("train", "Train one model and save it");
  auto* evaluate = app.add_subcommand("evaluate", "Score a saved model against lexicon labels");
  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validate models on one corpus");
  auto* report = app.add_subcommand("report", "Run the full pipeline and write the report bundle");
  auto* compare = app.add_subcommand("compare", "Compare two topics from an existing bundle");

  for (auto* sub : {ingest, label, train, evaluate, crossval, report, compare}) {
    AddCommon(*sub, common);
    sub->add_flag("-v,--verbose", common.verbose, "Log pipeline progress to stderr");
  }
  for (auto* sub : {ingest, label, train, evaluate, crossval}) AddInput(*sub, input);
  evaluate->add_option("--model-file", model_path, "Saved model (JSON)")->required();
  for (auto* sub : {crossval, report}) {
    sub->add_flag("--stratified", common.stratified, "Stratify folds by label");
  }
  report->add_option("--topic", common.topics, "Topic as name=path[:csv]; repeat for two topics");
  compare->add_option("topics", compare_names, "Two topic names")->expected(2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return TS_ERR_USAGE;
  }

  if (common.verbose) ts_set_log_handler(LogToStderr, nullptr);

  try {
    if (*ingest) RunIngest(common, input);
    if (*label) RunLabel(common, input);
    if (*train) RunTrain(common, input);
    if (*evaluate) RunEvaluate(common, input, model_path);
    if (*crossval) RunCrossval(common, input);
    if (*report) RunReport(common);
    if (*compare) RunCompare(common, compare_names);
  } catch (const Failure& failure) {
    std::cerr << "error: " << failure.message << "\n";
    return failure.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return TS_ERR_INTERNAL;
  }
  return 0;
}
