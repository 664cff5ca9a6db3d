// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tweetsent/error.hpp"
#include "tweetsent/format.hpp"

namespace tweetsent {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void CheckKeys(const json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) ThrowUsage(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      ThrowUsage(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    ThrowUsage("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  ThrowUsage("invalid value '" + std::string(text) + "' for " + std::string(key));
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

CorpusFormat FormatForPath(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? CorpusFormat::kCsv : CorpusFormat::kJsonl;
}

TopicInput ParseTopicArg(std::string_view arg) {
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == arg.size()) {
    ThrowUsage("topic must look like name=path[:csv|:jsonl], got '" + std::string(arg) + "'");
  }
  TopicInput topic;
  topic.name = std::string(arg.substr(0, eq));
  std::string_view path = arg.substr(eq + 1);
  std::optional<CorpusFormat> format;
  if (path.ends_with(":csv")) {
    format = CorpusFormat::kCsv;
    path.remove_suffix(4);
  } else if (path.ends_with(":jsonl")) {
    format = CorpusFormat::kJsonl;
    path.remove_suffix(6);
  }
  topic.corpus = std::filesystem::path(path);
  topic.format = format.value_or(FormatForPath(topic.corpus));
  return topic;
}

void ApplyTreeParams(const json& j, TreeParams& tree) {
  if (j.contains("max_depth")) tree.max_depth = j["max_depth"].get<int>();
  if (j.contains("min_samples_split")) tree.min_samples_split = j["min_samples_split"].get<int>();
}

void ApplyHyperparameters(const json& h, ModelOptions& o) {
  CheckKeys(h, {"naive_bayes", "maxent", "svm", "decision_tree", "bagging", "random_forest"},
            "hyperparameters");
  if (h.contains("naive_bayes")) {
    const json& j = h["naive_bayes"];
    CheckKeys(j, {"alpha"}, "hyperparameters.naive_bayes");
    if (j.contains("alpha")) o.nb_alpha = j["alpha"].get<double>();
  }
  if (h.contains("maxent")) {
    const json& j = h["maxent"];
    CheckKeys(j, {"learning_rate", "l2", "epochs"}, "hyperparameters.maxent");
    if (j.contains("learning_rate")) o.maxent.learning_rate = j["learning_rate"].get<double>();
    if (j.contains("l2")) o.maxent.l2 = j["l2"].get<double>();
    if (j.contains("epochs")) o.maxent.epochs = j["epochs"].get<int>();
  }
  if (h.contains("svm")) {
    const json& j = h["svm"];
    CheckKeys(j, {"l2", "epochs", "project"}, "hyperparameters.svm");
    if (j.contains("l2")) o.svm.l2 = j["l2"].get<double>();
    if (j.contains("epochs")) o.svm.epochs = j["epochs"].get<int>();
    if (j.contains("project")) o.svm.project = j["project"].get<bool>();
  }
  if (h.contains("decision_tree")) {
    const json& j = h["decision_tree"];
    CheckKeys(j, {"max_depth", "min_samples_split"}, "hyperparameters.decision_tree");
    ApplyTreeParams(j, o.tree);
  }
  if (h.contains("bagging")) {
    const json& j = h["bagging"];
    CheckKeys(j, {"n_members", "max_depth", "min_samples_split", "bootstrap"},
              "hyperparameters.bagging");
    if (j.contains("n_members")) o.bagging.n_members = j["n_members"].get<int>();
    if (j.contains("bootstrap")) o.bagging.bootstrap = j["bootstrap"].get<bool>();
    ApplyTreeParams(j, o.bagging.tree);
  }
  if (h.contains("random_forest")) {
    const json& j = h["random_forest"];
    CheckKeys(j,
              {"n_members", "max_depth", "min_samples_split", "features_per_split", "bootstrap"},
              "hyperparameters.random_forest");
    if (j.contains("n_members")) o.forest.n_members = j["n_members"].get<int>();
    if (j.contains("features_per_split")) {
      o.forest.features_per_split = j["features_per_split"].get<std::size_t>();
    }
    if (j.contains("bootstrap")) o.forest.bootstrap = j["bootstrap"].get<bool>();
    ApplyTreeParams(j, o.forest.tree);
  }
}

bool ValidTopicName(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

ojson MetricsToJson(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
}

ojson ConfusionToJson(const ConfusionMatrix& cm) {
  ojson rows = ojson::object();
  for (SentimentLabel g : kAllLabels) {
    ojson row = ojson::object();
    for (SentimentLabel p : kAllLabels) row[std::string(LabelName(p))] = cm.counts[LabelIndex(g)][LabelIndex(p)];
    rows[std::string(LabelName(g))] = row;
  }
  return rows;
}

ojson PerClassToJson(const ConfusionMatrix& cm) {
  ojson out = ojson::object();
  for (SentimentLabel l : kAllLabels) {
    if (cm.classes.Contains(l)) out[std::string(LabelName(l))] = MetricsToJson(PrecisionRecallF1(cm, l));
  }
  return out;
}

ojson SummaryToJson(const DistributionSummary& s) {
  ojson ratio = s.positive_negative_ratio ? ojson(*s.positive_negative_ratio) : ojson(nullptr);
  return {{"topic", s.topic},
          {"documents", s.documents},
          {"positive", s.counts.positive},
          {"neutral", s.counts.neutral},
          {"negative", s.counts.negative},
          {"positive_share", s.positive_share},
          {"neutral_share", s.neutral_share},
          {"negative_share", s.negative_share},
          {"positive_negative_ratio", ratio}};
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    ThrowData(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) ThrowData("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) ThrowData("failed writing '" + path.string() + "'");
}

}  // namespace

// --- Configuration ----------------------------------------------------------

std::vector<ModelKind> ParseModelList(std::string_view text) {
  if (text == "all") return {kAllModelKinds.begin(), kAllModelKinds.end()};
  std::vector<ModelKind> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view name = text.substr(pos, end - pos);
    const auto kind = ParseModelKind(name);
    if (!kind) {
      ThrowUsage("unknown model '" + std::string(name) +
                 "' (expected all, naive_bayes, svm, maxent, decision_tree, random_forest, "
                 "bagging)");
    }
    if (std::find(out.begin(), out.end(), *kind) == out.end()) out.push_back(*kind);
    pos = end + 1;
  }
  return out;
}

RunConfig ParseRunConfig(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    ThrowUsage(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig config;
  try {
    CheckKeys(j,
              {"topics", "lexicon", "stopwords", "min_df", "models", "folds", "seed", "stratified",
               "out", "format", "threads", "weighting", "hyperparameters"},
              "config");
    if (j.contains("topics")) {
      for (const json& t : j["topics"]) {
        CheckKeys(t, {"name", "corpus", "format"}, "config topic");
        TopicInput topic;
        topic.name = t.at("name").get<std::string>();
        topic.corpus = Resolve(base_dir, t.at("corpus").get<std::string>());
        topic.format = t.contains("format") ? ParseCorpusFormat(t["format"].get<std::string>())
                                            : FormatForPath(topic.corpus);
        config.topics.push_back(std::move(topic));
      }
    }
    if (j.contains("lexicon")) config.lexicon = Resolve(base_dir, j["lexicon"].get<std::string>());
    if (j.contains("stopwords") && !j["stopwords"].is_null()) {
      config.stopwords = Resolve(base_dir, j["stopwords"].get<std::string>());
    }
    if (j.contains("min_df")) config.min_df = j["min_df"].get<std::uint64_t>();
    if (j.contains("models")) {
      const json& m = j["models"];
      if (m.is_string()) {
        config.models = ParseModelList(m.get<std::string>());
      } else {
        std::string joined;
        for (const json& name : m) joined += (joined.empty() ? "" : ",") + name.get<std::string>();
        config.models = ParseModelList(joined);
      }
    }
    if (j.contains("folds")) config.folds = j["folds"].get<std::size_t>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("stratified")) config.stratified = j["stratified"].get<bool>();
    if (j.contains("out")) config.out_dir = Resolve(base_dir, j["out"].get<std::string>());
    if (j.contains("format")) config.output_format = j["format"].get<std::string>();
    if (j.contains("threads")) config.threads = j["threads"].get<unsigned>();
    if (j.contains("weighting")) {
      for (const auto& [name, value] : j["weighting"].items()) {
        const auto kind = ParseModelKind(name);
        if (!kind) ThrowUsage("weighting: unknown model '" + name + "'");
        config.options.weighting[static_cast<std::size_t>(*kind)] =
            ParseWeighting(value.get<std::string>());
      }
    }
    if (j.contains("hyperparameters")) ApplyHyperparameters(j["hyperparameters"], config.options);
  } catch (const json::exception& e) {
    ThrowUsage(std::string("config: ") + e.what());
  }
  config.options.SetSeed(config.seed);
  config.options.threads = config.threads;
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowUsage("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRunConfig(buffer.str(), path.parent_path());
}

void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "seed") {
    config.seed = ParseNumber<std::uint64_t>(key, value);
    config.options.SetSeed(config.seed);
  } else if (key == "folds") {
    config.folds = ParseNumber<std::size_t>(key, value);
  } else if (key == "model") {
    config.models = ParseModelList(value);
  } else if (key == "lexicon") {
    config.lexicon = std::filesystem::path(value);
  } else if (key == "stopwords") {
    if (value.empty()) {
      config.stopwords.reset();
    } else {
      config.stopwords = std::filesystem::path(value);
    }
  } else if (key == "min_df") {
    config.min_df = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "out") {
    config.out_dir = std::filesystem::path(value);
  } else if (key == "format") {
    config.output_format = std::string(value);
  } else if (key == "topic") {
    TopicInput topic = ParseTopicArg(value);
    std::erase_if(config.topics, [&](const TopicInput& t) { return t.name == topic.name; });
    config.topics.push_back(std::move(topic));
  } else if (key == "clear_topics") {
    config.topics.clear();
  } else if (key == "threads") {
    config.threads = ParseNumber<unsigned>(key, value);
    config.options.threads = config.threads;
  } else if (key == "stratified") {
    config.stratified = ParseBool(key, value);
  } else {
    ThrowUsage("unknown config key '" + std::string(key) + "'");
  }
}

void ValidateRunConfig(const RunConfig& config) {
  if (config.topics.empty() || config.topics.size() > 2) {
    ThrowUsage("config must name exactly 1 or 2 topics, found " +
               std::to_string(config.topics.size()));
  }
  std::set<std::string> names;
  for (const TopicInput& t : config.topics) {
    if (!ValidTopicName(t.name)) {
      ThrowUsage("topic name '" + t.name + "' must use only [a-z0-9_-]");
    }
    if (!names.insert(t.name).second) ThrowUsage("topic '" + t.name + "' is listed twice");
    if (!std::filesystem::is_regular_file(t.corpus)) {
      ThrowUsage("corpus file not found: " + t.corpus.string());
    }
  }
  if (config.lexicon.empty()) ThrowUsage("no lexicon file configured");
  if (!std::filesystem::is_regular_file(config.lexicon)) {
    ThrowUsage("lexicon file not found: " + config.lexicon.string());
  }
  if (config.stopwords && !std::filesystem::is_regular_file(*config.stopwords)) {
    ThrowUsage("stopword file not found: " + config.stopwords->string());
  }
  if (config.folds < 2) ThrowUsage("folds must be at least 2");
  if (config.min_df < 1) ThrowUsage("min_df must be at least 1");
  if (config.models.empty()) ThrowUsage("no models selected");
  if (config.output_format != "json" && config.output_format != "csv") {
    ThrowUsage("format must be json or csv");
  }
}

// --- Building blocks --------------------------------------------------------

LabeledData LabelDocuments(const Lexicon& lexicon, std::vector<CleanDocument> docs) {
  LabeledData data;
  data.labels.reserve(docs.size());
  for (const CleanDocument& doc : docs) {
    const SentimentLabel label = LabelDocument(lexicon, doc.tokens);
    data.labels.push_back(label);
    data.counts.Add(label);
  }
  data.docs = std::move(docs);
  return data;
}

TrainingSet BuildTrainingSet(const LabeledData& data, std::uint64_t min_df) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(data.docs.size());
  for (const CleanDocument& d : data.docs) tokens.push_back(d.tokens);
  auto vocab = std::make_shared<const Vocabulary>(BuildVocabulary(tokens, min_df));
  return MakeTrainingSet(VectorizeCorpus(std::move(vocab), tokens), data.labels);
}

ModelReport CrossValidateModel(ModelKind kind, const TrainingSet& counts, const RunConfig& config) {
  const Trainer trainer = [&](const TrainingSet& train) -> Predictor {
    auto model = std::make_shared<const Model>(TrainModel(kind, train, config.options));
    return [model](const SparseVector& x) { return PredictCounts(*model, x).label; };
  };
  ModelReport report;
  report.kind = kind;
  report.weighting = config.options.WeightingFor(kind);
  CrossValidateOptions cv_options;
  cv_options.stratified = config.stratified;
  cv_options.threads = config.threads;
  report.cv = CrossValidate(trainer, counts, config.folds, config.seed, cv_options);
  report.macro = MacroAverage(report.cv.pooled);
  return report;
}

std::string EvaluationJson(const Model& model, const LabeledData& data) {
  if (data.docs.empty()) ThrowData("cannot evaluate on an empty corpus");
  std::vector<SentimentLabel> predicted;
  predicted.reserve(data.docs.size());
  for (const CleanDocument& d : data.docs) predicted.push_back(PredictTokens(model, d.tokens).label);
  const ConfusionMatrix cm = MakeConfusionMatrix(data.labels, predicted);
  ojson out = {{"model", ModelKindName(model.kind)},
               {"documents", data.docs.size()},
               {"accuracy", cm.Accuracy()},
               {"macro", MetricsToJson(MacroAverage(cm))},
               {"per_class", PerClassToJson(cm)},
               {"confusion", ConfusionToJson(cm)}};
  return out.dump(2) + "\n";
}

// --- Reports ----------------------------------------------------------------

DistributionSummary SummarizeDistribution(const TopicReport& report) {
  DistributionSummary s;
  s.topic = report.topic;
  s.documents = report.documents;
  s.counts = report.distribution;
  const double total = static_cast<double>(report.distribution.Total());
  if (total > 0) {
    s.positive_share = static_cast<double>(s.counts.positive) / total;
    s.neutral_share = static_cast<double>(s.counts.neutral) / total;
    s.negative_share = static_cast<double>(s.counts.negative) / total;
  }
  if (s.counts.negative > 0) {
    s.positive_negative_ratio =
        static_cast<double>(s.counts.positive) / static_cast<double>(s.counts.negative);
  }
  return s;
}

TopicComparison CompareTopics(const TopicReport& a, const TopicReport& b) {
  TopicComparison c;
  c.first = SummarizeDistribution(a);
  c.second = SummarizeDistribution(b);
  c.document_difference = static_cast<std::int64_t>(a.documents) - static_cast<std::int64_t>(b.documents);
  for (const ModelReport& ma : a.models) {
    const auto it = std::find_if(b.models.begin(), b.models.end(),
                                 [&](const ModelReport& mb) { return mb.kind == ma.kind; });
    if (it == b.models.end()) continue;
    c.deltas.push_back(MetricDelta{ma.kind, ma.macro.precision - it->macro.precision,
                                   ma.macro.recall - it->macro.recall, ma.macro.f1 - it->macro.f1,
                                   ma.cv.mean_accuracy - it->cv.mean_accuracy});
  }
  return c;
}

std::string MetricsCsv(const TopicReport& report) {
  std::string out = "Algorithm,Precision,Recall,Fscore,CrossValidate-mean-accuracy\n";
  for (const ModelReport& m : report.models) {
    out += CsvEscape(ModelDisplayName(m.kind)) + "," + FormatFixed(m.macro.precision, 6) + "," +
           FormatFixed(m.macro.recall, 6) + "," + FormatFixed(m.macro.f1, 6) + "," +
           FormatFixed(m.cv.mean_accuracy, 6) + "\n";
  }
  return out;
}

std::string MetricsJson(const TopicReport& report) {
  ojson models = ojson::array();
  for (const ModelReport& m : report.models) {
    ojson folds = ojson::array();
    for (const FoldResult& f : m.cv.folds) {
      folds.push_back({{"test_size", f.test_rows.size()},
                       {"accuracy", f.accuracy},
                       {"macro", MetricsToJson(f.macro)},
                       {"warnings", f.warnings}});
    }
    models.push_back({{"model", ModelKindName(m.kind)},
                      {"algorithm", ModelDisplayName(m.kind)},
                      {"weighting", WeightingName(m.weighting)},
                      {"macro", MetricsToJson(m.macro)},
                      {"per_class", PerClassToJson(m.cv.pooled)},
                      {"confusion", ConfusionToJson(m.cv.pooled)},
                      {"cross_validation",
                       {{"k", m.cv.k},
                        {"mean_accuracy", m.cv.mean_accuracy},
                        {"stddev_accuracy", m.cv.stddev_accuracy},
                        {"mean_macro_f1", m.cv.mean_macro_f1},
                        {"folds", folds}}}});
  }
  ojson out = {{"topic", report.topic},
               {"documents", report.documents},
               {"vocabulary_size", report.vocabulary_size},
               {"models", models}};
  return out.dump(2) + "\n";
}

std::string DistributionJson(const TopicReport& report) {
  ojson out = {{"topic", report.topic},
               {"documents", report.documents},
               {"positive", report.distribution.positive},
               {"neutral", report.distribution.neutral},
               {"negative", report.distribution.negative}};
  return out.dump(2) + "\n";
}

std::string HourlyCsv(const HourHistogram& hist) {
  std::string out = "hour,count\n";
  for (std::size_t h = 0; h < hist.bins.size(); ++h) {
    out += std::to_string(h) + "," + std::to_string(hist.bins[h]) + "\n";
  }
  return out;
}

std::string ComparisonJson(const TopicComparison& c) {
  ojson deltas = ojson::array();
  for (const MetricDelta& d : c.deltas) {
    deltas.push_back({{"model", ModelKindName(d.kind)},
                      {"precision_delta", d.precision},
                      {"recall_delta", d.recall},
                      {"f1_delta", d.f1},
                      {"cv_accuracy_delta", d.cv_accuracy}});
  }
  ojson out = {{"topics", {c.first.topic, c.second.topic}},
               {"distributions", {SummaryToJson(c.first), SummaryToJson(c.second)}},
               {"document_difference", c.document_difference},
               {"positive_share_delta", c.first.positive_share - c.second.positive_share},
               {"neutral_share_delta", c.first.neutral_share - c.second.neutral_share},
               {"negative_share_delta", c.first.negative_share - c.second.negative_share},
               {"model_deltas", deltas}};
  return out.dump(2) + "\n";
}

TopicReport LoadTopicReport(const std::filesystem::path& dir, std::string_view topic) {
  const std::string name(topic);
  const json dist = ReadJsonFile(dir / ("distribution_" + name + ".json"));
  const json metrics = ReadJsonFile(dir / ("metrics_" + name + ".json"));
  TopicReport report;
  try {
    report.topic = dist.at("topic").get<std::string>();
    report.documents = dist.at("documents").get<std::uint64_t>();
    report.distribution.positive = dist.at("positive").get<std::uint64_t>();
    report.distribution.neutral = dist.at("neutral").get<std::uint64_t>();
    report.distribution.negative = dist.at("negative").get<std::uint64_t>();
    report.vocabulary_size = metrics.at("vocabulary_size").get<std::size_t>();
    for (const json& m : metrics.at("models")) {
      ModelReport mr;
      const auto kind = ParseModelKind(m.at("model").get<std::string>());
      if (!kind) ThrowData("unknown model '" + m.at("model").get<std::string>() + "'");
      mr.kind = *kind;
      mr.weighting = ParseWeighting(m.at("weighting").get<std::string>());
      const json& macro = m.at("macro");
      mr.macro.precision = macro.at("precision").get<double>();
      mr.macro.recall = macro.at("recall").get<double>();
      mr.macro.f1 = macro.at("f1").get<double>();
      mr.macro.support = macro.at("support").get<std::uint64_t>();
      const json& cv = m.at("cross_validation");
      mr.cv.k = cv.at("k").get<std::size_t>();
      mr.cv.mean_accuracy = cv.at("mean_accuracy").get<double>();
      mr.cv.stddev_accuracy = cv.at("stddev_accuracy").get<double>();
      mr.cv.mean_macro_f1 = cv.at("mean_macro_f1").get<double>();
      report.models.push_back(std::move(mr));
    }
  } catch (const json::exception& e) {
    ThrowData("report for topic '" + name + "' is incomplete: " + e.what());
  }
  if (report.distribution.Total() != report.documents) {
    ThrowData("report for topic '" + name + "': distribution does not sum to the document count");
  }
  return report;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error(ErrorKind::kInternal, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// --- Pipeline ---------------------------------------------------------------

PipelineResult RunPipeline(const RunConfig& config, const LogSink& log) {
  ValidateRunConfig(config);
  PipelineResult result;
  std::string stage;
  const auto enter = [&](std::string_view name) {
    stage = std::string(name);
    result.stages.push_back(stage);
    if (log) log("stage " + stage);
  };

  struct TopicState {
    const TopicInput* input = nullptr;
    std::vector<RawTweet> raw;
    LabeledData data;
    TrainingSet training;
    TopicReport report;
  };
  std::vector<TopicState> topics(config.topics.size());
  std::map<std::string, std::string> files;  // ordered by name

  try {
    enter("ingest");
    const LexiconLoadResult lexicon = LoadLexicon(config.lexicon);
    for (const std::string& w : lexicon.warnings) {
      if (log) log("warning: lexicon " + w);
    }
    const StopwordSet stopwords = config.stopwords ? LoadStopwords(*config.stopwords) : StopwordSet{};
    for (std::size_t i = 0; i < topics.size(); ++i) {
      topics[i].input = &config.topics[i];
      topics[i].raw = LoadCorpus(config.topics[i].corpus, config.topics[i].format);
      if (topics[i].raw.empty()) ThrowData("topic '" + config.topics[i].name + "': corpus is empty");
      if (topics[i].raw.size() < config.folds) {
        ThrowData("topic '" + config.topics[i].name + "' has " +
                  std::to_string(topics[i].raw.size()) + " documents, fewer than " +
                  std::to_string(config.folds) + " folds");
      }
      topics[i].report.topic = config.topics[i].name;
      topics[i].report.documents = topics[i].raw.size();
      if (log) log("  " + config.topics[i].name + ": " + std::to_string(topics[i].raw.size()) + " tweets");
    }

    enter("clean");
    std::vector<std::vector<CleanDocument>> cleaned(topics.size());
    for (std::size_t i = 0; i < topics.size(); ++i) {
      cleaned[i] = CleanCorpus(topics[i].raw, stopwords);
      topics[i].report.hourly = HourlyHistogram(cleaned[i]);
    }

    enter("label");
    for (std::size_t i = 0; i < topics.size(); ++i) {
      topics[i].data = LabelDocuments(lexicon.lexicon, std::move(cleaned[i]));
      topics[i].report.distribution = topics[i].data.counts;
    }

    enter("featurize");
    for (TopicState& t : topics) {
      t.training = BuildTrainingSet(t.data, config.min_df);
      t.report.vocabulary_size = t.training.matrix.NumColumns();
      if (t.report.vocabulary_size == 0) {
        ThrowData("topic '" + t.report.topic + "': vocabulary is empty after min_df pruning");
      }
    }

    enter("train");
    for (TopicState& t : topics) {
      for (ModelKind kind : config.models) {
        const Model model = TrainModel(kind, t.training, config.options);
        files["model_" + t.report.topic + "_" + std::string(ModelKindName(kind)) + ".json"] =
            SerializeModel(model);
      }
    }

    enter("evaluate");
    for (TopicState& t : topics) {
      for (ModelKind kind : config.models) {
        t.report.models.push_back(CrossValidateModel(kind, t.training, config));
        for (const FoldResult& f : t.report.models.back().cv.folds) {
          for (const std::string& w : f.warnings) {
            if (log) log("warning: " + t.report.topic + "/" + std::string(ModelKindName(kind)) + " " + w);
          }
        }
      }
    }

    enter("report");
    for (const TopicState& t : topics) {
      files["metrics_" + t.report.topic + ".csv"] = MetricsCsv(t.report);
      files["metrics_" + t.report.topic + ".json"] = MetricsJson(t.report);
      files["distribution_" + t.report.topic + ".json"] = DistributionJson(t.report);
      files["hourly_" + t.report.topic + ".csv"] = HourlyCsv(t.report.hourly);
    }
    if (topics.size() == 2) {
      result.comparison = CompareTopics(topics[0].report, topics[1].report);
      files["comparison.json"] = ComparisonJson(*result.comparison);
    }

    ojson manifest_files = ojson::array();
    for (const auto& [name, content] : files) {
      result.files[name] = Sha256Hex(content);
      manifest_files.push_back({{"path", name}, {"bytes", content.size()}, {"sha256", result.files[name]}});
    }
    ojson models = ojson::array();
    for (ModelKind kind : config.models) models.push_back(ModelKindName(kind));
    ojson topic_names = ojson::array();
    for (const TopicInput& t : config.topics) topic_names.push_back(t.name);
    const ojson manifest = {{"format_version", 1},
                            {"stages", result.stages},
                            {"topics", topic_names},
                            {"models", models},
                            {"seed", config.seed},
                            {"folds", config.folds},
                            {"min_df", config.min_df},
                            {"files", manifest_files}};
    files["manifest.json"] = manifest.dump(2) + "\n";

    std::vector<std::filesystem::path> written;
    try {
      std::filesystem::create_directories(config.out_dir);
      for (const auto& [name, content] : files) {
        const auto path = config.out_dir / name;
        WriteFile(path, content);
        written.push_back(path);
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) std::filesystem::remove(p, ec);
      throw;
    }
    if (log) log("wrote " + std::to_string(files.size()) + " files to " + config.out_dir.string());
  } catch (const Error& e) {
    throw Error(e.kind(), "stage '" + stage + "': " + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    throw Error(ErrorKind::kData, "stage '" + stage + "': " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kInternal, "stage '" + stage + "': " + e.what());
  }

  for (TopicState& t : topics) result.reports.push_back(std::move(t.report));
  return result;
}

}  // namespace tweetsent
