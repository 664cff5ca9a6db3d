// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/training_set.hpp"

#include <algorithm>

#include "tweetsent/error.hpp"

namespace tweetsent {

TrainingSet TrainingSet::Select(std::span<const std::size_t> row_ids) const {
  TrainingSet out;
  out.matrix = matrix.Select(row_ids);
  out.labels.reserve(row_ids.size());
  for (std::size_t r : row_ids) {
    out.labels.push_back(labels.at(r));
    out.class_set.Insert(labels[r]);
  }
  return out;
}

TrainingSet MakeTrainingSet(DocTermMatrix matrix, std::vector<SentimentLabel> labels) {
  TrainingSet ts{std::move(matrix), std::move(labels), {}};
  for (SentimentLabel l : ts.labels) ts.class_set.Insert(l);
  ValidateTrainingSet(ts);
  return ts;
}

void ValidateTrainingSet(const TrainingSet& ts) {
  if (ts.labels.size() != ts.matrix.NumDocs()) {
    ThrowUsage("training set has " + std::to_string(ts.matrix.NumDocs()) + " rows but " +
               std::to_string(ts.labels.size()) + " labels");
  }
  if (ts.labels.empty() || ts.class_set.Empty()) ThrowUsage("training set is empty");
  if (!ts.matrix.vocab) ThrowUsage("training set has no vocabulary");
}

SentimentLabel ArgmaxLabel(const LabelScores& scores, LabelSet classes) {
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (!classes.Contains(LabelAt(c))) continue;
    if (!best || scores[c] > scores[*best]) best = c;
  }
  return LabelAt(best.value_or(0));
}

double ValueAt(const SparseVector& v, Column column) {
  const auto it = std::lower_bound(v.begin(), v.end(), column,
                                   [](const SparseEntry& e, Column c) { return e.column < c; });
  return (it != v.end() && it->column == column) ? it->weight : 0.0;
}

void CheckDimension(const SparseVector& v, std::size_t num_columns) {
  for (const SparseEntry& e : v) {
    if (e.column >= num_columns) {
      ThrowUsage("feature column " + std::to_string(e.column) +
                 " is outside the model vocabulary of size " + std::to_string(num_columns));
    }
  }
}

}  // namespace tweetsent
