// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "tweetsent/error.hpp"
#include "tweetsent/rng.hpp"

namespace tweetsent {

std::uint64_t ConfusionMatrix::Total() const {
  std::uint64_t total = 0;
  for (const auto& row : counts) {
    for (auto v : row) total += v;
  }
  return total;
}

std::uint64_t ConfusionMatrix::TruePositives(SentimentLabel c) const {
  return counts[LabelIndex(c)][LabelIndex(c)];
}

std::uint64_t ConfusionMatrix::FalsePositives(SentimentLabel c) const {
  std::uint64_t sum = 0;
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    if (g != LabelIndex(c)) sum += counts[g][LabelIndex(c)];
  }
  return sum;
}

std::uint64_t ConfusionMatrix::FalseNegatives(SentimentLabel c) const {
  std::uint64_t sum = 0;
  for (std::size_t p = 0; p < kNumLabels; ++p) {
    if (p != LabelIndex(c)) sum += counts[LabelIndex(c)][p];
  }
  return sum;
}

double ConfusionMatrix::Accuracy() const {
  const std::uint64_t total = Total();
  if (total == 0) return 0.0;
  std::uint64_t correct = 0;
  for (std::size_t c = 0; c < kNumLabels; ++c) correct += counts[c][c];
  return static_cast<double>(correct) / static_cast<double>(total);
}

void ConfusionMatrix::Add(SentimentLabel gold, SentimentLabel predicted) {
  classes.Insert(gold);
  classes.Insert(predicted);
  ++counts[LabelIndex(gold)][LabelIndex(predicted)];
}

void ConfusionMatrix::Merge(const ConfusionMatrix& other) {
  classes = LabelSet::FromBits(classes.Bits() | other.classes.Bits());
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    for (std::size_t p = 0; p < kNumLabels; ++p) counts[g][p] += other.counts[g][p];
  }
}

ConfusionMatrix MakeConfusionMatrix(std::span<const SentimentLabel> gold,
                                    std::span<const SentimentLabel> predicted) {
  if (gold.size() != predicted.size()) {
    ThrowUsage("confusion matrix: " + std::to_string(gold.size()) + " gold labels but " +
               std::to_string(predicted.size()) + " predictions");
  }
  if (gold.empty()) ThrowUsage("confusion matrix: no labels to compare");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) cm.Add(gold[i], predicted[i]);
  return cm;
}

double F1Score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * ((precision * recall) / denom) : 0.0;
}

ClassMetrics PrecisionRecallF1(const ConfusionMatrix& cm, SentimentLabel cls) {
  if (!cm.classes.Contains(cls)) {
    ThrowUsage("class '" + std::string(LabelName(cls)) + "' does not occur in the confusion matrix");
  }
  const auto tp = static_cast<double>(cm.TruePositives(cls));
  const auto fp = static_cast<double>(cm.FalsePositives(cls));
  const auto fn = static_cast<double>(cm.FalseNegatives(cls));
  ClassMetrics m;
  m.precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
  m.f1 = F1Score(m.precision, m.recall);
  m.support = cm.TruePositives(cls) + cm.FalseNegatives(cls);
  return m;
}

ClassMetrics MacroAverage(std::span<const ClassMetrics> per_class) {
  if (per_class.empty()) ThrowUsage("macro average of no classes");
  ClassMetrics out;
  for (const ClassMetrics& m : per_class) {
    out.precision += m.precision;
    out.recall += m.recall;
    out.f1 += m.f1;
    out.support += m.support;
  }
  const auto n = static_cast<double>(per_class.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

ClassMetrics MacroAverage(const ConfusionMatrix& cm) {
  std::vector<ClassMetrics> per_class;
  for (SentimentLabel l : kAllLabels) {
    if (cm.classes.Contains(l)) per_class.push_back(PrecisionRecallF1(cm, l));
  }
  return MacroAverage(per_class);
}

std::vector<std::vector<std::size_t>> KFoldSplit(std::size_t n, std::size_t k,
                                                 std::uint64_t seed,
                                                 std::span<const SentimentLabel> stratify_by) {
  if (k < 2) ThrowUsage("k-fold split needs k >= 2");
  if (k > n) {
    ThrowUsage("k-fold split needs k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
               ")");
  }
  if (!stratify_by.empty() && stratify_by.size() != n) {
    ThrowUsage("stratification labels must cover every item");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));
  if (!stratify_by.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return LabelIndex(stratify_by[a]) < LabelIndex(stratify_by[b]);
    });
  }
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  return folds;
}

namespace {

FoldResult RunFold(const Trainer& trainer, const TrainingSet& ts,
                   const std::vector<std::vector<std::size_t>>& folds, std::size_t i) {
  FoldResult fold;
  fold.test_rows = folds[i];
  std::vector<std::size_t> train_rows;
  for (std::size_t j = 0; j < folds.size(); ++j) {
    if (j != i) train_rows.insert(train_rows.end(), folds[j].begin(), folds[j].end());
  }
  std::sort(train_rows.begin(), train_rows.end());

  const TrainingSet train = ts.Select(train_rows);
  for (SentimentLabel l : kAllLabels) {
    if (ts.class_set.Contains(l) && !train.class_set.Contains(l)) {
      fold.warnings.push_back("fold " + std::to_string(i) + ": training split has no '" +
                              std::string(LabelName(l)) + "' examples");
    }
  }
  const Predictor predict = trainer(train);
  for (std::size_t r : fold.test_rows) fold.confusion.Add(ts.labels[r], predict(ts.matrix.rows[r]));
  fold.accuracy = fold.confusion.Accuracy();
  fold.macro = MacroAverage(fold.confusion);
  return fold;
}

}  // namespace

CVResult CrossValidate(const Trainer& trainer, const TrainingSet& ts, std::size_t k,
                       std::uint64_t seed, const CrossValidateOptions& options) {
  ValidateTrainingSet(ts);
  const auto folds = KFoldSplit(ts.Size(), k, seed,
                                options.stratified ? std::span<const SentimentLabel>(ts.labels)
                                                   : std::span<const SentimentLabel>());
  CVResult result;
  result.k = k;
  result.folds.resize(k);

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(k)));
  if (workers == 1) {
    for (std::size_t i = 0; i < k; ++i) result.folds[i] = RunFold(trainer, ts, folds, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < k; i = next++) {
          try {
            result.folds[i] = RunFold(trainer, ts, folds, i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (const FoldResult& f : result.folds) {
    result.mean_accuracy += f.accuracy;
    result.mean_macro_f1 += f.macro.f1;
    result.pooled.Merge(f.confusion);
  }
  result.mean_accuracy /= static_cast<double>(k);
  result.mean_macro_f1 /= static_cast<double>(k);
  double var = 0.0;
  for (const FoldResult& f : result.folds) {
    var += (f.accuracy - result.mean_accuracy) * (f.accuracy - result.mean_accuracy);
  }
  result.stddev_accuracy = std::sqrt(var / static_cast<double>(k));
  return result;
}

}  // namespace tweetsent
