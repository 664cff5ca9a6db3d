// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_TRAINING_SET_HPP
#define TWEETSENT_TRAINING_SET_HPP

#include <vector>

#include "tweetsent/features.hpp"
#include "tweetsent/label.hpp"

namespace tweetsent {

struct TrainingSet {
  DocTermMatrix matrix;
  std::vector<SentimentLabel> labels;
  LabelSet class_set;

  std::size_t Size() const { return labels.size(); }
  TrainingSet Select(std::span<const std::size_t> row_ids) const;
};

/// Builds a training set whose class_set is the set of labels present.
/// Throws Error(kUsage) on a row/label count mismatch or when empty.
TrainingSet MakeTrainingSet(DocTermMatrix matrix, std::vector<SentimentLabel> labels);

/// Checks the row/label invariant and that class_set is non-empty.
void ValidateTrainingSet(const TrainingSet& ts);

struct Prediction {
  SentimentLabel label = SentimentLabel::kPositive;
  LabelScores scores{};
};

/// Highest score among `classes`; ties go to the canonically first label.
SentimentLabel ArgmaxLabel(const LabelScores& scores, LabelSet classes);

/// Value of `column` in a sorted sparse vector, 0 when absent.
double ValueAt(const SparseVector& v, Column column);

/// Throws Error(kUsage) if any column is >= num_columns.
void CheckDimension(const SparseVector& v, std::size_t num_columns);

}  // namespace tweetsent

#endif  // TWEETSENT_TRAINING_SET_HPP
