// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_NAIVE_BAYES_HPP
#define TWEETSENT_NAIVE_BAYES_HPP

#include <array>
#include <vector>

#include "tweetsent/training_set.hpp"

namespace tweetsent {

/// Multinomial naive Bayes with additive (Laplace) smoothing.
///
///   prior(c)        = docs(c) / n_docs
///   likelihood(t|c) = (count(t, c) + alpha) / (total(c) + alpha * |V|)
///
/// Both are stored as natural logs. Classes outside `classes` keep an empty
/// likelihood table and a log prior of -inf.
struct NaiveBayesModel {
  double alpha = 1.0;
  LabelSet classes;
  std::size_t num_columns = 0;
  std::array<double, kNumLabels> log_prior{};
  std::array<std::vector<double>, kNumLabels> log_likelihood;

  friend bool operator==(const NaiveBayesModel&, const NaiveBayesModel&) = default;
};

/// Throws Error(kUsage) if alpha <= 0 or a class in ts.class_set has no
/// documents (the message names the class).
NaiveBayesModel TrainNaiveBayes(const TrainingSet& ts, double alpha = 1.0);

/// Normalized posteriors over the model's classes.
Prediction Predict(const NaiveBayesModel& model, const SparseVector& x);

}  // namespace tweetsent

#endif  // TWEETSENT_NAIVE_BAYES_HPP
