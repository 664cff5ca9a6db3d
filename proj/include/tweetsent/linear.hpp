// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_LINEAR_HPP
#define TWEETSENT_LINEAR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "tweetsent/training_set.hpp"

namespace tweetsent {

enum class LinearKind : std::uint8_t { kMaxEnt, kSvm };

/// Per-class weight vectors and biases, shared by the maximum-entropy and
/// one-vs-rest SVM classifiers. Every class slot holds num_columns weights;
/// slots outside `classes` stay zero and are never predicted.
struct LinearModel {
  LinearKind kind = LinearKind::kMaxEnt;
  LabelSet classes;
  std::size_t num_columns = 0;
  std::array<std::vector<double>, kNumLabels> weights;
  std::array<double, kNumLabels> bias{};
  /// Training objective after each epoch.
  std::vector<double> loss_trace;

  static LinearModel Zero(LinearKind kind, LabelSet classes, std::size_t num_columns);
  double Margin(std::size_t cls, const SparseVector& x) const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct MaxEntParams {
  double learning_rate = 0.1;
  double l2 = 1e-3;
  int epochs = 500;
};

/// Mean negative log-likelihood of the softmax model over the training set
/// plus (l2 / 2) * ||W||^2 (biases are not penalized). Only classes in
/// ts.class_set take part. When gradient is non-null it receives dLoss/dW and
/// dLoss/db in the same layout as `point`.
double MaxEntObjective(const TrainingSet& ts, const LinearModel& point, double l2,
                       LinearModel* gradient);

/// Full-batch gradient descent from zero weights. Throws Error(kUsage) on bad
/// hyperparameters or when the loss stops being finite (learning rate too large).
LinearModel TrainMaxEnt(const TrainingSet& ts, const MaxEntParams& params = {});

struct SvmParams {
  double l2 = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 42;
  /// Project onto the ball of radius 1/sqrt(l2) after each step.
  bool project = true;
};

/// One-vs-rest linear SVMs trained with Pegasos stochastic subgradient steps
/// of size 1/(l2 * t) on the hinge loss. The bias is learned as the weight of
/// an implicit constant feature. Throws Error(kUsage) with a single class.
LinearModel TrainLinearSvm(const TrainingSet& ts, const SvmParams& params = {});

/// MaxEnt reports softmax probabilities, SVM raw margins.
Prediction Predict(const LinearModel& model, const SparseVector& x);

}  // namespace tweetsent

#endif  // TWEETSENT_LINEAR_HPP
