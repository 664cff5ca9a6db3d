// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/tweetsent.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <new>
#include <string>

#include "json.hpp"
#include "tweetsent/corpus.hpp"
#include "tweetsent/error.hpp"
#include "tweetsent/lexicon.hpp"
#include "tweetsent/model.hpp"
#include "tweetsent/pipeline.hpp"

struct ts_corpus {
  std::vector<tweetsent::RawTweet> raw;
  std::vector<tweetsent::CleanDocument> docs;
};

struct ts_lexicon {
  tweetsent::LexiconLoadResult loaded;
};

struct ts_model {
  tweetsent::Model model;
};

struct ts_config {
  tweetsent::RunConfig config;
};

namespace {

using tweetsent::Error;
using tweetsent::ErrorKind;
using json = nlohmann::json;

thread_local std::string g_last_error;

std::mutex g_log_mutex;
ts_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

void Log(std::string_view line) {
  std::lock_guard lock(g_log_mutex);
  if (g_log_fn) g_log_fn(std::string(line).c_str(), g_log_user);
}

ts_status Fail(ts_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
ts_status Guard(Fn&& fn) {
  try {
    fn();
    return TS_OK;
  } catch (const Error& e) {
    return Fail(static_cast<ts_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TS_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TS_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(const void* p, const char* name) {
  if (p == nullptr) tweetsent::ThrowUsage(std::string(name) + " must not be NULL");
}

tweetsent::LabeledData Labeled(const ts_lexicon* lexicon, const ts_corpus* corpus) {
  return tweetsent::LabelDocuments(lexicon->loaded.lexicon, corpus->docs);
}

void WriteText(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) tweetsent::ThrowData(std::string("cannot write '") + path + "'");
  out << text;
  if (!out) tweetsent::ThrowData(std::string("failed writing '") + path + "'");
}

}  // namespace

extern "C" {

const char* ts_version(void) { return "1.0.0"; }

const char* ts_last_error(void) { return g_last_error.c_str(); }

const char* ts_label_name(int label) {
  if (label < 0 || label > 2) return "unknown";
  static const std::string names[] = {"positive", "neutral", "negative"};
  return names[label].c_str();
}

void ts_string_free(char* str) { std::free(str); }

void ts_set_log_handler(ts_log_fn fn, void* user_data) {
  std::lock_guard lock(g_log_mutex);
  g_log_fn = fn;
  g_log_user = user_data;
}

ts_status ts_clean_text(const char* raw, char** out) {
  return Guard([&] {
    Require(raw, "raw");
    Require(out, "out");
    *out = CopyString(tweetsent::CleanText(raw));
  });
}

// ---- corpus ----------------------------------------------------------------

ts_status ts_corpus_load(const char* path, const char* format, const char* stopwords_path,
                         ts_corpus** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    const auto fmt = tweetsent::ParseCorpusFormat(format ? format : "jsonl");
    const tweetsent::StopwordSet stopwords =
        stopwords_path ? tweetsent::LoadStopwords(stopwords_path) : tweetsent::StopwordSet{};
    auto corpus = std::make_unique<ts_corpus>();
    corpus->raw = tweetsent::LoadCorpus(path, fmt);
    corpus->docs = tweetsent::CleanCorpus(corpus->raw, stopwords);
    *out = corpus.release();
  });
}

void ts_corpus_free(ts_corpus* corpus) { delete corpus; }

size_t ts_corpus_size(const ts_corpus* corpus) { return corpus ? corpus->docs.size() : 0; }

ts_status ts_corpus_hourly(const ts_corpus* corpus, uint64_t bins[24]) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(bins, "bins");
    const auto hist = tweetsent::HourlyHistogram(corpus->docs);
    std::copy(hist.bins.begin(), hist.bins.end(), bins);
  });
}

ts_status ts_corpus_write_clean(const ts_corpus* corpus, const char* path) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(path, "path");
    std::string text;
    for (const auto& d : corpus->docs) {
      const nlohmann::ordered_json row = {{"id", d.id},
                                          {"topic", d.topic},
                                          {"created_at", tweetsent::FormatTimestamp(d.created_at)},
                                          {"tokens", d.tokens}};
      text += row.dump() + "\n";
    }
    WriteText(path, text);
  });
}

// ---- lexicon ---------------------------------------------------------------

ts_status ts_lexicon_load(const char* path, ts_lexicon** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    auto lexicon = std::make_unique<ts_lexicon>();
    lexicon->loaded = tweetsent::LoadLexicon(path);
    *out = lexicon.release();
  });
}

void ts_lexicon_free(ts_lexicon* lexicon) { delete lexicon; }

size_t ts_lexicon_size(const ts_lexicon* lexicon) {
  return lexicon ? lexicon->loaded.lexicon.Size() : 0;
}

size_t ts_lexicon_warning_count(const ts_lexicon* lexicon) {
  return lexicon ? lexicon->loaded.warnings.size() : 0;
}

const char* ts_lexicon_warning(const ts_lexicon* lexicon, size_t index) {
  if (!lexicon || index >= lexicon->loaded.warnings.size()) return nullptr;
  return lexicon->loaded.warnings[index].c_str();
}

ts_status ts_lexicon_score(const ts_lexicon* lexicon, const char* clean_text, double* score,
                           int* label) {
  return Guard([&] {
    Require(lexicon, "lexicon");
    Require(clean_text, "clean_text");
    const auto tokens = tweetsent::Tokenize(clean_text, {});
    const tweetsent::Weight w = tweetsent::ScoreDocument(lexicon->loaded.lexicon, tokens);
    if (score) *score = boost::rational_cast<double>(w);
    if (label) *label = static_cast<int>(tweetsent::LabelForScore(w));
  });
}

ts_status ts_label_corpus(const ts_lexicon* lexicon, const ts_corpus* corpus, const char* out_path,
                          uint64_t counts[3]) {
  return Guard([&] {
    Require(lexicon, "lexicon");
    Require(corpus, "corpus");
    const auto labeled = tweetsent::LabelCorpus(lexicon->loaded.lexicon, corpus->docs);
    if (counts) {
      counts[0] = labeled.counts.positive;
      counts[1] = labeled.counts.neutral;
      counts[2] = labeled.counts.negative;
    }
    if (out_path) {
      std::string text;
      for (const auto& d : labeled.docs) {
        const nlohmann::ordered_json row = {
            {"id", d.doc.id},
            {"topic", d.doc.topic},
            {"label", tweetsent::LabelName(d.label)},
            {"score", tweetsent::FormatWeight(*d.score)}};
        text += row.dump() + "\n";
      }
      WriteText(out_path, text);
    }
  });
}

// ---- configuration ---------------------------------------------------------

ts_status ts_config_new(ts_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new ts_config();
  });
}

ts_status ts_config_load(const char* path, ts_config** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    auto config = std::make_unique<ts_config>();
    config->config = tweetsent::LoadRunConfig(path);
    *out = config.release();
  });
}

void ts_config_free(ts_config* config) { delete config; }

ts_status ts_config_set(ts_config* config, const char* key, const char* value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    tweetsent::SetConfigValue(config->config, key, value);
  });
}

ts_status ts_config_get(const ts_config* config, const char* key, char** value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    const auto& c = config->config;
    const std::string k = key;
    std::string v;
    if (k == "seed") {
      v = std::to_string(c.seed);
    } else if (k == "folds") {
      v = std::to_string(c.folds);
    } else if (k == "model") {
      for (auto kind : c.models) v += (v.empty() ? "" : ",") + std::string(tweetsent::ModelKindName(kind));
    } else if (k == "lexicon") {
      v = c.lexicon.string();
    } else if (k == "stopwords") {
      v = c.stopwords ? c.stopwords->string() : "";
    } else if (k == "min_df") {
      v = std::to_string(c.min_df);
    } else if (k == "out") {
      v = c.out_dir.string();
    } else if (k == "format") {
      v = c.output_format;
    } else if (k == "threads") {
      v = std::to_string(c.threads);
    } else if (k == "stratified") {
      v = c.stratified ? "true" : "false";
    } else {
      tweetsent::ThrowUsage("unknown config key '" + k + "'");
    }
    *value = CopyString(v);
  });
}

// ---- models ----------------------------------------------------------------

ts_status ts_model_train(const ts_config* config, const ts_corpus* corpus,
                         const ts_lexicon* lexicon, const char* model_name, ts_model** out) {
  return Guard([&] {
    Require(config, "config");
    Require(corpus, "corpus");
    Require(lexicon, "lexicon");
    Require(model_name, "model_name");
    Require(out, "out");
    *out = nullptr;
    const auto kind = tweetsent::ParseModelKind(model_name);
    if (!kind) tweetsent::ThrowUsage(std::string("unknown model '") + model_name + "'");
    if (corpus->docs.empty()) tweetsent::ThrowData("cannot train on an empty corpus");
    const auto data = Labeled(lexicon, corpus);
    const auto ts = tweetsent::BuildTrainingSet(data, config->config.min_df);
    auto model = std::make_unique<ts_model>();
    model->model = tweetsent::TrainModel(*kind, ts, config->config.options);
    *out = model.release();
  });
}

ts_status ts_model_save(const ts_model* model, const char* path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    tweetsent::SaveModel(model->model, path);
  });
}

ts_status ts_model_load(const char* path, ts_model** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    auto model = std::make_unique<ts_model>();
    model->model = tweetsent::LoadModel(path);
    *out = model.release();
  });
}

void ts_model_free(ts_model* model) { delete model; }

const char* ts_model_kind(const ts_model* model) {
  if (!model) return "";
  // ModelKindName views static storage.
  return tweetsent::ModelKindName(model->model.kind).data();
}

size_t ts_model_vocabulary_size(const ts_model* model) {
  return model ? model->model.vocab->Size() : 0;
}

ts_status ts_model_predict_text(const ts_model* model, const char* raw_text, int* label,
                                double scores[3]) {
  return Guard([&] {
    Require(model, "model");
    Require(raw_text, "raw_text");
    const auto tokens = tweetsent::Tokenize(tweetsent::CleanText(raw_text), {});
    const auto p = tweetsent::PredictTokens(model->model, tokens);
    if (label) *label = static_cast<int>(p.label);
    if (scores) std::copy(p.scores.begin(), p.scores.end(), scores);
  });
}

ts_status ts_model_evaluate(const ts_model* model, const ts_corpus* corpus,
                            const ts_lexicon* lexicon, char** report_json) {
  return Guard([&] {
    Require(model, "model");
    Require(corpus, "corpus");
    Require(lexicon, "lexicon");
    Require(report_json, "report_json");
    *report_json = CopyString(tweetsent::EvaluationJson(model->model, Labeled(lexicon, corpus)));
  });
}

// ---- evaluation and pipeline -----------------------------------------------

ts_status ts_crossval(const ts_config* config, const ts_corpus* corpus, const ts_lexicon* lexicon,
                      char** report) {
  return Guard([&] {
    Require(config, "config");
    Require(corpus, "corpus");
    Require(lexicon, "lexicon");
    Require(report, "report");
    const auto& cfg = config->config;
    if (corpus->docs.size() < cfg.folds) {
      tweetsent::ThrowData("corpus has " + std::to_string(corpus->docs.size()) +
                           " documents, fewer than " + std::to_string(cfg.folds) + " folds");
    }
    const auto data = Labeled(lexicon, corpus);
    const auto ts = tweetsent::BuildTrainingSet(data, cfg.min_df);
    tweetsent::TopicReport topic;
    topic.topic = corpus->docs.front().topic;
    topic.documents = data.docs.size();
    topic.vocabulary_size = ts.matrix.NumColumns();
    topic.distribution = data.counts;
    topic.hourly = tweetsent::HourlyHistogram(corpus->docs);
    for (auto kind : cfg.models) {
      Log("crossval " + std::string(tweetsent::ModelKindName(kind)));
      topic.models.push_back(tweetsent::CrossValidateModel(kind, ts, cfg));
    }
    *report = CopyString(cfg.output_format == "csv" ? tweetsent::MetricsCsv(topic)
                                                    : tweetsent::MetricsJson(topic));
  });
}

ts_status ts_run_pipeline(const ts_config* config, char** summary_json) {
  return Guard([&] {
    Require(config, "config");
    const auto result = tweetsent::RunPipeline(config->config, Log);
    if (summary_json) {
      nlohmann::ordered_json summary = {{"out", config->config.out_dir.string()},
                                        {"stages", result.stages},
                                        {"files", result.files}};
      nlohmann::ordered_json topics = nlohmann::ordered_json::array();
      for (const auto& r : result.reports) {
        topics.push_back({{"topic", r.topic},
                          {"documents", r.documents},
                          {"positive", r.distribution.positive},
                          {"neutral", r.distribution.neutral},
                          {"negative", r.distribution.negative}});
      }
      summary["topics"] = topics;
      *summary_json = CopyString(summary.dump(2) + "\n");
    }
  });
}

ts_status ts_compare_bundle(const char* dir, const char* topic_a, const char* topic_b,
                            char** comparison_json) {
  return Guard([&] {
    Require(dir, "dir");
    Require(topic_a, "topic_a");
    Require(topic_b, "topic_b");
    const auto a = tweetsent::LoadTopicReport(dir, topic_a);
    const auto b = tweetsent::LoadTopicReport(dir, topic_b);
    const std::string text = tweetsent::ComparisonJson(tweetsent::CompareTopics(a, b));
    WriteText((std::filesystem::path(dir) / "comparison.json").c_str(), text);
    if (comparison_json) *comparison_json = CopyString(text);
  });
}

}  // extern "C"
