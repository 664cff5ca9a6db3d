// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/model.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tweetsent/error.hpp"

namespace tweetsent {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 6> kKindNames = {
    "naive_bayes", "svm", "maxent", "decision_tree", "random_forest", "bagging"};
constexpr std::array<std::string_view, 6> kDisplayNames = {
    "Naive Bayes", "SVM", "Maxent", "Decision Tree", "Random Forest", "Bagging"};

json LabelSetToJson(LabelSet set) {
  json out = json::array();
  for (SentimentLabel l : kAllLabels) {
    if (set.Contains(l)) out.push_back(LabelName(l));
  }
  return out;
}

SentimentLabel LabelFromJson(const json& j) {
  const auto label = ParseLabel(j.get<std::string>());
  if (!label) ThrowData("unknown class label '" + j.get<std::string>() + "'");
  return *label;
}

LabelSet LabelSetFromJson(const json& j) {
  LabelSet set;
  for (const auto& item : j) set.Insert(LabelFromJson(item));
  return set;
}

void ExpectSize(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    ThrowData(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
              std::to_string(n));
  }
}

// --- Naive Bayes -----------------------------------------------------------

json ToJson(const NaiveBayesModel& m) {
  json classes = json::object();
  for (SentimentLabel l : kAllLabels) {
    if (!m.classes.Contains(l)) continue;
    const std::size_t c = LabelIndex(l);
    classes[std::string(LabelName(l))] = {{"log_prior", m.log_prior[c]},
                                          {"log_likelihood", m.log_likelihood[c]}};
  }
  return {{"alpha", m.alpha}, {"num_columns", m.num_columns}, {"classes", classes}};
}

NaiveBayesModel NaiveBayesFromJson(const json& j) {
  NaiveBayesModel m;
  m.alpha = j.at("alpha").get<double>();
  m.num_columns = j.at("num_columns").get<std::size_t>();
  m.log_prior.fill(-std::numeric_limits<double>::infinity());
  for (const auto& [name, block] : j.at("classes").items()) {
    const auto label = ParseLabel(name);
    if (!label) ThrowData("unknown class label '" + name + "'");
    const std::size_t c = LabelIndex(*label);
    m.classes.Insert(*label);
    m.log_prior[c] = block.at("log_prior").get<double>();
    m.log_likelihood[c] = block.at("log_likelihood").get<std::vector<double>>();
    ExpectSize(m.log_likelihood[c], m.num_columns, "naive Bayes likelihood table");
  }
  return m;
}

// --- Linear ----------------------------------------------------------------

json ToJson(const LinearModel& m) {
  json weights = json::object();
  json bias = json::object();
  for (SentimentLabel l : kAllLabels) {
    if (!m.classes.Contains(l)) continue;
    weights[std::string(LabelName(l))] = m.weights[LabelIndex(l)];
    bias[std::string(LabelName(l))] = m.bias[LabelIndex(l)];
  }
  return {{"kind", m.kind == LinearKind::kMaxEnt ? "maxent" : "svm"},
          {"num_columns", m.num_columns},
          {"classes", LabelSetToJson(m.classes)},
          {"weights", weights},
          {"bias", bias},
          {"loss_trace", m.loss_trace}};
}

LinearModel LinearFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "maxent" && kind != "svm") ThrowData("unknown linear model kind '" + kind + "'");
  LinearModel m = LinearModel::Zero(kind == "maxent" ? LinearKind::kMaxEnt : LinearKind::kSvm,
                                    LabelSetFromJson(j.at("classes")),
                                    j.at("num_columns").get<std::size_t>());
  for (SentimentLabel l : kAllLabels) {
    if (!m.classes.Contains(l)) continue;
    const std::string name(LabelName(l));
    m.weights[LabelIndex(l)] = j.at("weights").at(name).get<std::vector<double>>();
    ExpectSize(m.weights[LabelIndex(l)], m.num_columns, "linear weight vector");
    m.bias[LabelIndex(l)] = j.at("bias").at(name).get<double>();
  }
  m.loss_trace = j.at("loss_trace").get<std::vector<double>>();
  return m;
}

// --- Trees -----------------------------------------------------------------

json ToJson(const TreeModel& m) {
  json nodes = json::array();
  for (const TreeNode& n : m.nodes) {
    nodes.push_back({n.column, n.threshold, n.left, n.right, n.counts[0], n.counts[1],
                     n.counts[2]});
  }
  return {{"max_depth", m.params.max_depth},
          {"min_samples_split", m.params.min_samples_split},
          {"num_columns", m.num_columns},
          {"classes", LabelSetToJson(m.classes)},
          {"nodes", nodes}};
}

TreeModel TreeFromJson(const json& j) {
  TreeModel m;
  m.params.max_depth = j.at("max_depth").get<int>();
  m.params.min_samples_split = j.at("min_samples_split").get<int>();
  m.num_columns = j.at("num_columns").get<std::size_t>();
  m.classes = LabelSetFromJson(j.at("classes"));
  const json& nodes = j.at("nodes");
  if (nodes.empty()) ThrowData("tree has no nodes");
  const auto count = static_cast<std::int32_t>(nodes.size());
  for (const json& n : nodes) {
    if (n.size() != 7) ThrowData("tree node must have 7 fields");
    TreeNode node;
    node.column = n[0].get<std::int32_t>();
    node.threshold = n[1].get<double>();
    node.left = n[2].get<std::int32_t>();
    node.right = n[3].get<std::int32_t>();
    for (std::size_t c = 0; c < kNumLabels; ++c) node.counts[c] = n[4 + c].get<std::uint32_t>();
    if (!node.IsLeaf()) {
      const auto self = static_cast<std::int32_t>(m.nodes.size());
      if (node.column < 0 || static_cast<std::size_t>(node.column) >= m.num_columns ||
          node.left <= self || node.right <= self || node.left >= count || node.right >= count) {
        ThrowData("tree node " + std::to_string(self) + " has an invalid split");
      }
    } else if (node.counts[0] + node.counts[1] + node.counts[2] == 0) {
      ThrowData("tree leaf has empty class counts");
    }
    m.nodes.push_back(node);
  }
  return m;
}

json ToJson(const EnsembleModel& m) {
  json members = json::array();
  for (std::size_t i = 0; i < m.members.size(); ++i) {
    const MemberPolicy& p = m.policies[i];
    members.push_back({{"policy",
                        {{"stream", p.stream},
                         {"features_per_split", p.features_per_split},
                         {"sample_size", p.sample_size}}},
                       {"tree", ToJson(m.members[i])}});
  }
  return {{"kind", m.kind == EnsembleKind::kBagging ? "bagging" : "random_forest"},
          {"num_columns", m.num_columns},
          {"classes", LabelSetToJson(m.classes)},
          {"bootstrap", m.bootstrap},
          {"seed", m.seed},
          {"members", members}};
}

EnsembleModel EnsembleFromJson(const json& j) {
  EnsembleModel m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "bagging" && kind != "random_forest") {
    ThrowData("unknown ensemble kind '" + kind + "'");
  }
  m.kind = kind == "bagging" ? EnsembleKind::kBagging : EnsembleKind::kRandomForest;
  m.num_columns = j.at("num_columns").get<std::size_t>();
  m.classes = LabelSetFromJson(j.at("classes"));
  m.bootstrap = j.at("bootstrap").get<bool>();
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const json& member : j.at("members")) {
    const json& p = member.at("policy");
    m.policies.push_back(MemberPolicy{p.at("stream").get<std::uint64_t>(),
                                      p.at("features_per_split").get<std::size_t>(),
                                      p.at("sample_size").get<std::size_t>()});
    m.members.push_back(TreeFromJson(member.at("tree")));
  }
  if (m.members.empty()) ThrowData("ensemble has no members");
  return m;
}

std::string_view BodyKey(ModelKind kind) {
  switch (kind) {
    case ModelKind::kNaiveBayes: return "naive_bayes";
    case ModelKind::kLinearSvm:
    case ModelKind::kMaxEnt: return "linear";
    case ModelKind::kDecisionTree: return "tree";
    case ModelKind::kRandomForest:
    case ModelKind::kBagging: return "ensemble";
  }
  return "";
}

std::size_t BodyColumns(const ModelBody& body) {
  return std::visit([](const auto& m) { return m.num_columns; }, body);
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string_view ModelDisplayName(ModelKind kind) {
  return kDisplayNames[static_cast<std::size_t>(kind)];
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  for (ModelKind kind : kAllModelKinds) {
    if (ModelKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

void ModelOptions::SetSeed(std::uint64_t seed) {
  svm.seed = seed;
  bagging.seed = seed;
  forest.seed = seed;
}

LabelSet Model::Classes() const {
  return std::visit([](const auto& m) { return m.classes; }, body);
}

Model TrainModel(ModelKind kind, const TrainingSet& counts, const ModelOptions& options) {
  ValidateTrainingSet(counts);
  if (counts.matrix.weighting != Weighting::kCounts) {
    ThrowUsage("TrainModel expects a counts-weighted training set");
  }
  Model model;
  model.kind = kind;
  model.vocab = counts.matrix.vocab;
  model.weighting = options.WeightingFor(kind);

  const TrainingSet* features = &counts;
  TrainingSet weighted;
  if (model.weighting == Weighting::kTfidf) {
    model.idf = IdfWeights(*model.vocab);
    weighted = counts;
    weighted.matrix = TfidfTransform(counts.matrix);
    features = &weighted;
  }

  switch (kind) {
    case ModelKind::kNaiveBayes:
      model.body = TrainNaiveBayes(*features, options.nb_alpha);
      break;
    case ModelKind::kLinearSvm:
      model.body = TrainLinearSvm(*features, options.svm);
      break;
    case ModelKind::kMaxEnt:
      model.body = TrainMaxEnt(*features, options.maxent);
      break;
    case ModelKind::kDecisionTree:
      model.body = TrainDecisionTree(*features, options.tree);
      break;
    case ModelKind::kRandomForest:
      model.body = TrainRandomForest(*features, options.forest, options.threads);
      break;
    case ModelKind::kBagging:
      model.body = TrainBagging(*features, options.bagging, options.threads);
      break;
  }
  return model;
}

Prediction Predict(const Model& model, const SparseVector& x) {
  return std::visit([&](const auto& m) { return Predict(m, x); }, model.body);
}

Prediction PredictCounts(const Model& model, const SparseVector& counts) {
  if (model.weighting == Weighting::kTfidf) {
    CheckDimension(counts, model.idf.size());
    return Predict(model, ApplyIdf(counts, model.idf));
  }
  return Predict(model, counts);
}

Prediction PredictTokens(const Model& model, std::span<const std::string> tokens) {
  return PredictCounts(model, VectorizeCounts(*model.vocab, tokens));
}

std::string SerializeModel(const Model& model) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["model_kind"] = ModelKindName(model.kind);
  j["vocabulary"] = {{"terms", model.vocab->Terms()},
                     {"doc_freq", model.vocab->DocFreq()},
                     {"fit_docs", model.vocab->FitDocs()}};
  j["weighting"] = WeightingName(model.weighting);
  if (model.weighting == Weighting::kTfidf) j["idf"] = model.idf;
  j["classes"] = LabelSetToJson(model.Classes());
  j[std::string(BodyKey(model.kind))] =
      std::visit([](const auto& m) { return ToJson(m); }, model.body);
  return j.dump() + "\n";
}

Model DeserializeModel(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    ThrowData(std::string("model file is truncated or malformed: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("format_version")) {
      ThrowData("model file has no format_version");
    }
    const json& version = j.at("format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
      ThrowData("unsupported model format_version '" +
                (version.is_string() ? version.get<std::string>() : version.dump()) +
                "' (expected " + std::to_string(kModelFormatVersion) + ")");
    }
    const std::string kind_name = j.at("model_kind").get<std::string>();
    const auto kind = ParseModelKind(kind_name);
    if (!kind) ThrowData("unknown model_kind '" + kind_name + "'");

    Model model;
    model.kind = *kind;
    const json& vocab = j.at("vocabulary");
    try {
      model.vocab = std::make_shared<const Vocabulary>(
          vocab.at("terms").get<std::vector<std::string>>(),
          vocab.at("doc_freq").get<std::vector<std::uint64_t>>(),
          vocab.at("fit_docs").get<std::uint64_t>());
    } catch (const Error& e) {
      ThrowData(std::string("invalid vocabulary: ") + e.what());
    }
    try {
      model.weighting = ParseWeighting(j.at("weighting").get<std::string>());
    } catch (const Error& e) {
      ThrowData(e.what());
    }
    if (model.weighting == Weighting::kTfidf) {
      model.idf = j.at("idf").get<std::vector<double>>();
      ExpectSize(model.idf, model.vocab->Size(), "idf vector");
    }

    const json& body = j.at(std::string(BodyKey(*kind)));
    switch (*kind) {
      case ModelKind::kNaiveBayes: model.body = NaiveBayesFromJson(body); break;
      case ModelKind::kLinearSvm:
      case ModelKind::kMaxEnt: {
        LinearModel linear = LinearFromJson(body);
        const LinearKind expected =
            *kind == ModelKind::kMaxEnt ? LinearKind::kMaxEnt : LinearKind::kSvm;
        if (linear.kind != expected) ThrowData("linear block kind does not match model_kind");
        model.body = std::move(linear);
        break;
      }
      case ModelKind::kDecisionTree: model.body = TreeFromJson(body); break;
      case ModelKind::kRandomForest:
      case ModelKind::kBagging: {
        EnsembleModel ensemble = EnsembleFromJson(body);
        const EnsembleKind expected = *kind == ModelKind::kBagging ? EnsembleKind::kBagging
                                                                   : EnsembleKind::kRandomForest;
        if (ensemble.kind != expected) ThrowData("ensemble kind does not match model_kind");
        for (const TreeModel& t : ensemble.members) {
          if (t.num_columns != ensemble.num_columns) ThrowData("ensemble member width mismatch");
        }
        model.body = std::move(ensemble);
        break;
      }
    }
    if (BodyColumns(model.body) != model.vocab->Size()) {
      ThrowData("model parameters do not match the vocabulary size");
    }
    return model;
  } catch (const json::exception& e) {
    ThrowData(std::string("model file is truncated or malformed: ") + e.what());
  }
}

void SaveModel(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowData("cannot write model file '" + path.string() + "'");
  out << SerializeModel(model);
  if (!out) ThrowData("failed writing model file '" + path.string() + "'");
}

Model LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowData("cannot open model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return DeserializeModel(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace tweetsent
