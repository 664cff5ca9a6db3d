// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_TREE_HPP
#define TWEETSENT_TREE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetsent/rng.hpp"
#include "tweetsent/training_set.hpp"

namespace tweetsent {

using ClassCounts = std::array<std::uint32_t, kNumLabels>;

/// 1 - sum_i (count_i / total)^2. Throws Error(kUsage) when all counts are 0.
double GiniImpurity(std::span<const double> counts);
double GiniImpurity(const ClassCounts& counts);

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;

  std::int32_t column = kLeaf;  // split column, kLeaf for leaves
  double threshold = 0.0;       // go left when x[column] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  ClassCounts counts{};         // training samples reaching this node

  bool IsLeaf() const { return column == kLeaf; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeParams {
  int max_depth = 0;  // 0: unlimited
  int min_samples_split = 2;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  TreeParams params;
  LabelSet classes;
  std::size_t num_columns = 0;

  int Depth() const;
  const TreeNode& LeafFor(const SparseVector& x) const;

  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

/// Greedy CART with Gini impurity. Candidate thresholds are midpoints between
/// consecutive distinct values a column takes at the node. The split with the
/// lowest weighted child impurity wins; exact ties go to the lower column,
/// then the lower threshold. Growth stops on a pure node, at max_depth, below
/// min_samples_split, or when every candidate column is constant.
TreeModel TrainDecisionTree(const TrainingSet& ts, const TreeParams& params = {});

struct GrowOptions {
  /// Rows to train on; repeats give bootstrap multiplicity.
  std::span<const std::size_t> sample;
  /// Columns examined per split; 0 examines every column.
  std::size_t features_per_split = 0;
  /// Required when features_per_split > 0.
  Rng* rng = nullptr;
};

TreeModel GrowTree(const TrainingSet& ts, const TreeParams& params, const GrowOptions& options);

/// Majority class of the reached leaf; scores are the leaf's class shares.
Prediction Predict(const TreeModel& model, const SparseVector& x);

}  // namespace tweetsent

#endif  // TWEETSENT_TREE_HPP
