// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_ENSEMBLE_HPP
#define TWEETSENT_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "tweetsent/tree.hpp"

namespace tweetsent {

enum class EnsembleKind : std::uint8_t { kBagging, kRandomForest };

/// How one member was grown. Together with the ensemble seed this pins down
/// the member's bootstrap sample and every per-split feature subset.
struct MemberPolicy {
  std::uint64_t stream = 0;             // RNG substream (the member index)
  std::size_t features_per_split = 0;   // 0: all columns
  std::size_t sample_size = 0;          // rows drawn; equals n_docs

  friend bool operator==(const MemberPolicy&, const MemberPolicy&) = default;
};

struct EnsembleModel {
  EnsembleKind kind = EnsembleKind::kBagging;
  std::vector<TreeModel> members;
  std::vector<MemberPolicy> policies;
  LabelSet classes;
  std::size_t num_columns = 0;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  friend bool operator==(const EnsembleModel&, const EnsembleModel&) = default;
};

struct BaggingParams {
  int n_members = 15;
  TreeParams tree;
  std::uint64_t seed = 42;
  /// Diagnostic: train every member on the full training set.
  bool bootstrap = true;
};

struct ForestParams {
  int n_members = 25;
  TreeParams tree;
  /// 0 selects floor(sqrt(|V|)) (at least 1).
  std::size_t features_per_split = 0;
  std::uint64_t seed = 42;
  bool bootstrap = true;
};

/// Member m draws from Rng(seed, m), so adding members leaves earlier ones
/// unchanged. Members are grown concurrently when `threads` > 1; the result
/// is identical to sequential growth.
EnsembleModel TrainBagging(const TrainingSet& ts, const BaggingParams& params = {},
                           unsigned threads = 1);
EnsembleModel TrainRandomForest(const TrainingSet& ts, const ForestParams& params = {},
                                unsigned threads = 1);

/// Majority vote; scores are vote shares. Ties go to the canonical order.
Prediction Predict(const EnsembleModel& model, const SparseVector& x);

}  // namespace tweetsent

#endif  // TWEETSENT_ENSEMBLE_HPP
