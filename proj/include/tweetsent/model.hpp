// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_MODEL_HPP
#define TWEETSENT_MODEL_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tweetsent/ensemble.hpp"
#include "tweetsent/linear.hpp"
#include "tweetsent/naive_bayes.hpp"
#include "tweetsent/tree.hpp"

namespace tweetsent {

enum class ModelKind : std::uint8_t {
  kNaiveBayes,
  kLinearSvm,
  kMaxEnt,
  kDecisionTree,
  kRandomForest,
  kBagging,
};

inline constexpr std::array<ModelKind, 6> kAllModelKinds = {
    ModelKind::kNaiveBayes,   ModelKind::kLinearSvm,    ModelKind::kMaxEnt,
    ModelKind::kDecisionTree, ModelKind::kRandomForest, ModelKind::kBagging};

/// Machine name: naive_bayes, svm, maxent, decision_tree, random_forest, bagging.
std::string_view ModelKindName(ModelKind kind);
/// Table name: "Naive Bayes", "SVM", ...
std::string_view ModelDisplayName(ModelKind kind);
std::optional<ModelKind> ParseModelKind(std::string_view name);

/// Every hyperparameter a pipeline run can set, with the documented defaults.
struct ModelOptions {
  double nb_alpha = 1.0;
  MaxEntParams maxent;
  SvmParams svm;
  TreeParams tree;
  BaggingParams bagging;
  ForestParams forest;
  /// Feature weighting per ModelKind (indexed by its value).
  std::array<Weighting, 6> weighting = {Weighting::kCounts, Weighting::kTfidf,
                                        Weighting::kTfidf,  Weighting::kCounts,
                                        Weighting::kCounts, Weighting::kCounts};
  /// Threads for ensemble members.
  unsigned threads = 1;

  Weighting WeightingFor(ModelKind kind) const {
    return weighting[static_cast<std::size_t>(kind)];
  }
  /// Sets the seed of every randomized trainer.
  void SetSeed(std::uint64_t seed);
};

using ModelBody = std::variant<NaiveBayesModel, LinearModel, TreeModel, EnsembleModel>;

/// A trained classifier together with the feature pipeline it expects.
struct Model {
  ModelKind kind = ModelKind::kNaiveBayes;
  std::shared_ptr<const Vocabulary> vocab;
  Weighting weighting = Weighting::kCounts;
  std::vector<double> idf;  // per column, only for tfidf weighting
  ModelBody body;

  LabelSet Classes() const;
};

/// Trains `kind` on a counts-weighted training set. For tfidf models the
/// counts are re-weighted with idf from the vocabulary's fit statistics,
/// which are stored in the model for prediction.
Model TrainModel(ModelKind kind, const TrainingSet& counts, const ModelOptions& options);

/// `x` must already carry the model's weighting. Throws Error(kUsage) when a
/// column is outside the vocabulary.
Prediction Predict(const Model& model, const SparseVector& x);

/// Applies the model's weighting to a count vector, then predicts.
Prediction PredictCounts(const Model& model, const SparseVector& counts);

Prediction PredictTokens(const Model& model, std::span<const std::string> tokens);

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON: format_version, model_kind, vocabulary, weighting, plus
/// a kind-specific parameter block. Doubles use shortest round-trip form.
std::string SerializeModel(const Model& model);

/// Throws Error(kData) for unknown versions (naming the tag), truncated or
/// malformed documents, and inconsistent shapes.
Model DeserializeModel(std::string_view text);

void SaveModel(const Model& model, const std::filesystem::path& path);
Model LoadModel(const std::filesystem::path& path);

}  // namespace tweetsent

#endif  // TWEETSENT_MODEL_HPP
