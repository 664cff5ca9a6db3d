// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations for the tests. These work on dense rows with plain
// loops and deliberately share no code with the library.

#ifndef TWEETSENT_TESTS_ORACLES_HPP
#define TWEETSENT_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tweetsent/features.hpp"
#include "tweetsent/label.hpp"
#include "tweetsent/training_set.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;
using tweetsent::SentimentLabel;

constexpr SentimentLabel kPos = SentimentLabel::kPositive;
constexpr SentimentLabel kNeu = SentimentLabel::kNeutral;
constexpr SentimentLabel kNeg = SentimentLabel::kNegative;

inline std::size_t Idx(SentimentLabel l) { return static_cast<std::size_t>(l); }

inline tweetsent::SparseVector Sparse(const std::vector<double>& row) {
  tweetsent::SparseVector v;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0.0) v.push_back({static_cast<tweetsent::Column>(j), row[j]});
  }
  return v;
}

/// Training set over terms "t0".."t{v-1}" from dense rows; zeros are omitted.
inline tweetsent::TrainingSet MakeTrainingSet(
    const Dense& rows, const std::vector<SentimentLabel>& labels, std::size_t num_terms,
    tweetsent::Weighting weighting = tweetsent::Weighting::kCounts) {
  std::vector<std::string> terms;
  for (std::size_t j = 0; j < num_terms; ++j) terms.push_back("t" + std::to_string(j));
  std::vector<std::uint64_t> df(num_terms, 1);
  tweetsent::DocTermMatrix m;
  m.vocab = std::make_shared<const tweetsent::Vocabulary>(
      terms, df, std::max<std::uint64_t>(1, rows.size()));
  m.weighting = weighting;
  for (const auto& row : rows) m.rows.push_back(Sparse(row));
  return tweetsent::MakeTrainingSet(std::move(m), labels);
}

/// Posterior by direct Bayes rule with products of probabilities (no logs).
inline std::array<double, 3> NaiveBayesPosterior(const Dense& rows,
                                                 const std::vector<SentimentLabel>& labels,
                                                 std::size_t num_terms, double alpha,
                                                 const std::vector<double>& x) {
  std::array<double, 3> joint{};
  const double n = static_cast<double>(rows.size());
  for (std::size_t c = 0; c < 3; ++c) {
    double docs = 0.0;
    std::vector<double> count(num_terms, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (Idx(labels[i]) != c) continue;
      docs += 1.0;
      for (std::size_t j = 0; j < num_terms; ++j) {
        count[j] += rows[i][j];
        total += rows[i][j];
      }
    }
    if (docs == 0.0) continue;
    double p = docs / n;
    for (std::size_t j = 0; j < num_terms; ++j) {
      const double lik = (count[j] + alpha) / (total + alpha * static_cast<double>(num_terms));
      p *= std::pow(lik, x[j]);
    }
    joint[c] = p;
  }
  const double z = joint[0] + joint[1] + joint[2];
  for (auto& p : joint) p /= z;
  return joint;
}

inline double Gini(const std::array<double, 3>& counts) {
  const double total = counts[0] + counts[1] + counts[2];
  double sum = 0.0;
  for (double c : counts) sum += (c / total) * (c / total);
  return 1.0 - sum;
}

struct SplitScore {
  bool any = false;           // at least one candidate split exists
  double weighted_gini = 0.0;  // minimum over candidates
};

/// Weighted child Gini of splitting `rows` at x[column] <= threshold.
inline double WeightedGini(const Dense& rows, const std::vector<SentimentLabel>& labels,
                           std::size_t column, double threshold) {
  std::array<double, 3> left{}, right{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    (rows[i][column] <= threshold ? left : right)[Idx(labels[i])] += 1.0;
  }
  const double nl = left[0] + left[1] + left[2];
  const double nr = right[0] + right[1] + right[2];
  return (nl * Gini(left) + nr * Gini(right)) / (nl + nr);
}

/// Enumerates every (column, midpoint threshold) pair.
inline SplitScore BestSplit(const Dense& rows, const std::vector<SentimentLabel>& labels,
                            std::size_t num_terms) {
  SplitScore best;
  best.weighted_gini = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < num_terms; ++j) {
    std::set<double> values;
    for (const auto& r : rows) values.insert(r[j]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const double t = (*it + *std::next(it)) / 2.0;
      best.any = true;
      best.weighted_gini = std::min(best.weighted_gini, WeightedGini(rows, labels, j, t));
    }
  }
  return best;
}

/// Dense softmax regression parameters: w[c][j], b[c] for the present classes.
struct DenseLinear {
  std::vector<std::vector<double>> w;
  std::vector<double> b;
};

/// Mean NLL plus (l2 / 2) * ||w||^2 over the classes listed in `classes`.
inline double MaxEntLoss(const Dense& rows, const std::vector<SentimentLabel>& labels,
                         const std::vector<std::size_t>& classes, const DenseLinear& p,
                         double l2) {
  double nll = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> z;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      double s = p.b[k];
      for (std::size_t j = 0; j < rows[i].size(); ++j) s += p.w[k][j] * rows[i][j];
      z.push_back(s);
    }
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    const std::size_t gold =
        static_cast<std::size_t>(std::find(classes.begin(), classes.end(), Idx(labels[i])) -
                                 classes.begin());
    nll += -(z[gold] - m - std::log(sum));
  }
  double reg = 0.0;
  for (const auto& row : p.w) {
    for (double v : row) reg += v * v;
  }
  return nll / static_cast<double>(rows.size()) + 0.5 * l2 * reg;
}

/// |a - b| / max(|a| + |b|, floor).
inline double RelativeError(double a, double b, double floor = 1e-8) {
  return std::abs(a - b) / std::max(std::abs(a) + std::abs(b), floor);
}

}  // namespace oracle

#endif  // TWEETSENT_TESTS_ORACLES_HPP
