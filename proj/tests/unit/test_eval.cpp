// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "../oracles.hpp"
#include "doctest.h"
#include "tweetsent/error.hpp"
#include "tweetsent/eval.hpp"
#include "tweetsent/rng.hpp"

using namespace tweetsent;
using oracle::kNeg;
using oracle::kNeu;
using oracle::kPos;

TEST_SUITE("eval") {
  TEST_CASE("confusion matrix") {
    const std::vector<SentimentLabel> g = {kPos, kNeg};
    const auto cm = MakeConfusionMatrix(g, g);
    CHECK(cm.counts[0][0] == 1);
    CHECK(cm.counts[2][2] == 1);
    CHECK(cm.counts[0][2] == 0);
    CHECK(cm.Accuracy() == 1.0);

    const std::vector<SentimentLabel> gold = {kPos}, pred = {kNeg};
    const auto miss = MakeConfusionMatrix(gold, pred);
    CHECK(miss.counts[0][2] == 1);
    CHECK(miss.classes.Contains(kNeg));

    CHECK_THROWS_AS(MakeConfusionMatrix(gold, g), Error);
    CHECK_THROWS_AS(MakeConfusionMatrix({}, {}), Error);
  }

  TEST_CASE("confusion matrix identities on random input") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<SentimentLabel> gold, pred;
      for (int i = 0; i < 50; ++i) {
        gold.push_back(LabelAt(rng.Below(3)));
        pred.push_back(LabelAt(rng.Below(3)));
      }
      const auto cm = MakeConfusionMatrix(gold, pred);
      CHECK(cm.Total() == 50);
      std::uint64_t tp = 0, fn = 0;
      for (auto c : kAllLabels) {
        tp += cm.TruePositives(c);
        fn += cm.FalseNegatives(c);
      }
      CHECK(tp + fn == cm.Total());
      for (auto c : kAllLabels) {
        if (!cm.classes.Contains(c)) continue;
        const auto m = PrecisionRecallF1(cm, c);
        CHECK(m.precision >= 0.0);
        CHECK(m.precision <= 1.0);
        CHECK(m.recall <= 1.0);
        CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
        CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
        CHECK((m.f1 == 0.0) == (m.precision * m.recall == 0.0));
        const double t = static_cast<double>(cm.TruePositives(c));
        const double denom =
            2 * t + static_cast<double>(cm.FalsePositives(c) + cm.FalseNegatives(c));
        if (denom > 0) CHECK(m.f1 == doctest::Approx(2 * t / denom).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("precision, recall, f1") {
    CHECK(F1Score(0.80, 0.44) == doctest::Approx(0.5677).epsilon(1e-4));
    CHECK(std::lround(100 * F1Score(0.80, 0.44)) == 57);
    CHECK(F1Score(0.67, 0.67) == doctest::Approx(0.67));
    CHECK(F1Score(0.0, 0.0) == 0.0);

    ConfusionMatrix cm;
    cm.classes.Insert(kPos);
    cm.classes.Insert(kNeg);
    cm.counts[2][2] = 5;
    const auto zero = PrecisionRecallF1(cm, kPos);
    CHECK(zero.precision == 0.0);
    CHECK(zero.recall == 0.0);
    CHECK(zero.f1 == 0.0);
    CHECK_THROWS_AS(PrecisionRecallF1(cm, kNeu), Error);
  }

  TEST_CASE("macro average") {
    const ClassMetrics m{0.5, 0.25, 0.3, 4};
    const std::vector<ClassMetrics> same = {m, m};
    CHECK(MacroAverage(same).f1 == doctest::Approx(0.3));
    CHECK(MacroAverage(same).support == 8);
    const std::vector<ClassMetrics> two = {{1, 1, 1.0, 1}, {0, 0, 0.0, 1}};
    CHECK(MacroAverage(two).f1 == 0.5);
    const std::vector<ClassMetrics> three = {{0, 0, 0.6, 1}, {0, 0, 0.3, 1}, {0, 0, 0.9, 1}};
    CHECK(MacroAverage(three).f1 == doctest::Approx(0.6));
    CHECK_THROWS_AS(MacroAverage(std::span<const ClassMetrics>{}), Error);
  }

  TEST_CASE("k-fold split") {
    auto sizes = [](const std::vector<std::vector<std::size_t>>& folds) {
      std::vector<std::size_t> s;
      for (const auto& f : folds) s.push_back(f.size());
      std::sort(s.rbegin(), s.rend());
      return s;
    };
    CHECK(sizes(KFoldSplit(12, 4, 1)) == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(sizes(KFoldSplit(10, 4, 1)) == std::vector<std::size_t>{3, 3, 2, 2});
    CHECK(KFoldSplit(10, 4, 7) == KFoldSplit(10, 4, 7));
    CHECK(KFoldSplit(30, 4, 7) != KFoldSplit(30, 4, 8));
    CHECK_THROWS_AS(KFoldSplit(3, 4, 1), Error);
    CHECK_THROWS_AS(KFoldSplit(5, 1, 1), Error);
  }

  TEST_CASE("stratified split keeps class proportions") {
    std::vector<SentimentLabel> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i < 20 ? kPos : (i < 32 ? kNeu : kNeg));
    const auto folds = KFoldSplit(40, 4, 3, labels);
    for (const auto& f : folds) {
      int pos = 0;
      for (auto i : f) pos += labels[i] == kPos;
      CHECK(pos == 5);
    }
  }

  TEST_CASE("cross_validate with a constant-majority trainer") {
    oracle::Dense rows(40, std::vector<double>{1.0});
    std::vector<SentimentLabel> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i % 2 ? kNeg : kPos);
    const auto ts = oracle::MakeTrainingSet(rows, labels, 1);
    const Trainer majority = [](const TrainingSet& train) {
      std::array<int, 3> count{};
      for (auto l : train.labels) ++count[LabelIndex(l)];
      const auto best = LabelAt(static_cast<std::size_t>(
          std::max_element(count.begin(), count.end()) - count.begin()));
      return Predictor([best](const SparseVector&) { return best; });
    };
    const auto cv = CrossValidate(majority, ts, 4, 42);
    REQUIRE(cv.folds.size() == 4);
    // Each fold trains on 30 rows; whichever class leads there is the minority of the fold.
    double lo = 1, hi = 0;
    std::size_t covered = 0;
    for (const auto& f : cv.folds) {
      int pos = 0;
      for (auto i : f.test_rows) pos += labels[i] == kPos;
      const int train_pos = 20 - pos;
      const int train_neg = 30 - train_pos;
      const auto predicted = train_pos >= train_neg ? kPos : kNeg;
      const int right = predicted == kPos ? pos : 10 - pos;
      CHECK(f.accuracy == doctest::Approx(right / 10.0));
      lo = std::min(lo, f.accuracy);
      hi = std::max(hi, f.accuracy);
      covered += f.test_rows.size();
    }
    CHECK(covered == 40);
    CHECK(cv.mean_accuracy >= lo);
    CHECK(cv.mean_accuracy <= hi);
    CHECK(cv.pooled.Total() == 40);
    const auto again = CrossValidate(majority, ts, 4, 42);
    CHECK(again.mean_accuracy == cv.mean_accuracy);
    CHECK(again.pooled == cv.pooled);
    CrossValidateOptions threaded;
    threaded.threads = 3;
    CHECK(CrossValidate(majority, ts, 4, 42, threaded).pooled == cv.pooled);
  }

  TEST_CASE("fold missing a class gets a warning") {
    oracle::Dense rows(8, std::vector<double>{1.0});
    std::vector<SentimentLabel> labels(8, kPos);
    labels[0] = kNeg;
    const auto ts = oracle::MakeTrainingSet(rows, labels, 1);
    const Trainer constant = [](const TrainingSet&) {
      return Predictor([](const SparseVector&) { return kPos; });
    };
    const auto cv = CrossValidate(constant, ts, 4, 1);
    std::size_t warned = 0;
    for (const auto& f : cv.folds) warned += !f.warnings.empty();
    CHECK(warned == 1);
  }
}
