// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_EVAL_HPP
#define TWEETSENT_EVAL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tweetsent/label.hpp"
#include "tweetsent/training_set.hpp"

namespace tweetsent {

/// counts[g][p]: items with gold class g predicted as p, indexed by
/// LabelIndex. `classes` holds every label seen in gold or predictions.
struct ConfusionMatrix {
  LabelSet classes;
  std::array<std::array<std::uint64_t, kNumLabels>, kNumLabels> counts{};

  std::uint64_t Total() const;
  std::uint64_t TruePositives(SentimentLabel c) const;
  std::uint64_t FalsePositives(SentimentLabel c) const;  // column c off-diagonal
  std::uint64_t FalseNegatives(SentimentLabel c) const;  // row c off-diagonal
  double Accuracy() const;

  void Add(SentimentLabel gold, SentimentLabel predicted);
  void Merge(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws Error(kUsage) on a length mismatch or empty input.
ConfusionMatrix MakeConfusionMatrix(std::span<const SentimentLabel> gold,
                                    std::span<const SentimentLabel> predicted);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

/// F1 = 2 * P * R / (P + R), or 0 when P + R is 0.
double F1Score(double precision, double recall);

/// precision = tp / (tp + fp), recall = tp / (tp + fn); 0/0 is taken as 0.
/// Throws Error(kUsage) if `cls` is not among the matrix classes.
ClassMetrics PrecisionRecallF1(const ConfusionMatrix& cm, SentimentLabel cls);

/// Unweighted mean of precision, recall and f1; support is summed.
/// Throws Error(kUsage) on empty input.
ClassMetrics MacroAverage(std::span<const ClassMetrics> per_class);

/// Macro average over every class of the matrix.
ClassMetrics MacroAverage(const ConfusionMatrix& cm);

/// Shuffles 0..n-1 with Rng(seed) and deals round-robin into k folds, so fold
/// sizes differ by at most one. With `stratify_by`, rows are grouped by label
/// (canonical order) after shuffling before dealing. Throws Error(kUsage)
/// unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> KFoldSplit(
    std::size_t n, std::size_t k, std::uint64_t seed,
    std::span<const SentimentLabel> stratify_by = {});

using Predictor = std::function<SentimentLabel(const SparseVector&)>;
using Trainer = std::function<Predictor(const TrainingSet&)>;

struct FoldResult {
  std::vector<std::size_t> test_rows;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  ClassMetrics macro;
  std::vector<std::string> warnings;
};

struct CVResult {
  std::size_t k = 0;
  std::vector<FoldResult> folds;
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;  // population standard deviation over folds
  double mean_macro_f1 = 0.0;
  /// Out-of-fold predictions of every fold summed into one matrix.
  ConfusionMatrix pooled;
};

struct CrossValidateOptions {
  bool stratified = false;
  /// Folds evaluated concurrently; results are identical for any value.
  unsigned threads = 1;
};

/// Trains on all-but-fold-i and evaluates on fold i for every fold. A
/// training split missing one of ts.class_set is recorded as a fold warning
/// and the fold is still evaluated.
CVResult CrossValidate(const Trainer& trainer, const TrainingSet& ts, std::size_t k,
                       std::uint64_t seed, const CrossValidateOptions& options = {});

}  // namespace tweetsent

#endif  // TWEETSENT_EVAL_HPP
