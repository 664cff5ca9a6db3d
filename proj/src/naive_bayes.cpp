// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/naive_bayes.hpp"

#include <cmath>
#include <limits>

#include "tweetsent/error.hpp"

namespace tweetsent {

NaiveBayesModel TrainNaiveBayes(const TrainingSet& ts, double alpha) {
  ValidateTrainingSet(ts);
  if (!(alpha > 0.0)) ThrowUsage("naive Bayes smoothing alpha must be positive");

  const std::size_t vocab_size = ts.matrix.NumColumns();
  std::array<std::size_t, kNumLabels> docs{};
  std::array<std::vector<double>, kNumLabels> term_counts;
  std::array<double, kNumLabels> totals{};
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (ts.class_set.Contains(LabelAt(c))) term_counts[c].assign(vocab_size, 0.0);
  }
  for (std::size_t r = 0; r < ts.Size(); ++r) {
    const std::size_t c = LabelIndex(ts.labels[r]);
    if (term_counts[c].empty()) continue;
    ++docs[c];
    for (const SparseEntry& e : ts.matrix.rows[r]) {
      term_counts[c][e.column] += e.weight;
      totals[c] += e.weight;
    }
  }

  NaiveBayesModel model;
  model.alpha = alpha;
  model.classes = ts.class_set;
  model.num_columns = vocab_size;
  const double n = static_cast<double>(ts.Size());
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    model.log_prior[c] = -std::numeric_limits<double>::infinity();
    if (term_counts[c].empty()) continue;
    if (docs[c] == 0) {
      ThrowUsage("naive Bayes: class '" + std::string(LabelName(LabelAt(c))) +
                 "' has no training documents");
    }
    model.log_prior[c] = std::log(static_cast<double>(docs[c]) / n);
    const double log_denominator =
        std::log(totals[c] + alpha * static_cast<double>(vocab_size));
    auto& table = model.log_likelihood[c];
    table.resize(vocab_size);
    for (std::size_t t = 0; t < vocab_size; ++t) {
      table[t] = std::log(term_counts[c][t] + alpha) - log_denominator;
    }
  }
  return model;
}

Prediction Predict(const NaiveBayesModel& model, const SparseVector& x) {
  CheckDimension(x, model.num_columns);
  LabelScores log_post{};
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (!model.classes.Contains(LabelAt(c))) continue;
    double lp = model.log_prior[c];
    for (const SparseEntry& e : x) lp += e.weight * model.log_likelihood[c][e.column];
    log_post[c] = lp;
    max_log = std::max(max_log, lp);
  }
  Prediction out;
  double norm = 0.0;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (!model.classes.Contains(LabelAt(c))) continue;
    out.scores[c] = std::exp(log_post[c] - max_log);
    norm += out.scores[c];
  }
  for (double& s : out.scores) s /= norm;
  out.label = ArgmaxLabel(out.scores, model.classes);
  return out;
}

}  // namespace tweetsent
