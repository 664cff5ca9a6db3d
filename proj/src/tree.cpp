// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/tree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

#include "tweetsent/error.hpp"

namespace tweetsent {
namespace {

double Gini(const ClassCounts& counts, double total) {
  double sum_sq = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

std::uint32_t Sum(const ClassCounts& counts) { return counts[0] + counts[1] + counts[2]; }

bool IsPure(const ClassCounts& counts) {
  int nonzero = 0;
  for (auto c : counts) nonzero += c > 0 ? 1 : 0;
  return nonzero <= 1;
}

struct Split {
  Column column = 0;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
  bool found = false;
};

// Floyd's algorithm: k distinct columns out of [0, n), returned sorted.
std::vector<Column> SampleColumns(Rng& rng, std::size_t n, std::size_t k) {
  std::unordered_set<Column> chosen;
  chosen.reserve(k * 2);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<Column>(rng.Below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(static_cast<Column>(j));
  }
  std::vector<Column> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

class TreeGrower {
 public:
  TreeGrower(const TrainingSet& ts, const TreeParams& params, const GrowOptions& options)
      : ts_(ts), params_(params), options_(options) {}

  TreeModel Grow() {
    TreeModel model;
    model.params = params_;
    model.classes = ts_.class_set;
    model.num_columns = ts_.matrix.NumColumns();
    nodes_ = &model.nodes;
    std::vector<std::size_t> sample(options_.sample.begin(), options_.sample.end());
    if (sample.empty()) ThrowUsage("cannot grow a tree on an empty sample");
    Build(std::move(sample), 0);
    return model;
  }

 private:
  ClassCounts CountLabels(const std::vector<std::size_t>& sample) const {
    ClassCounts counts{};
    for (std::size_t r : sample) ++counts[LabelIndex(ts_.labels[r])];
    return counts;
  }

  std::int32_t Build(std::vector<std::size_t> sample, int depth) {
    const auto index = static_cast<std::int32_t>(nodes_->size());
    nodes_->push_back(TreeNode{});
    const ClassCounts counts = CountLabels(sample);
    (*nodes_)[static_cast<std::size_t>(index)].counts = counts;

    const bool stop = IsPure(counts) ||
                      (params_.max_depth > 0 && depth >= params_.max_depth) ||
                      sample.size() < static_cast<std::size_t>(std::max(params_.min_samples_split, 2));
    if (stop) return index;

    const Split split = BestSplit(sample, counts);
    if (!split.found) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t r : sample) {
      (ValueAt(ts_.matrix.rows[r], split.column) <= split.threshold ? left : right).push_back(r);
    }
    sample.clear();
    sample.shrink_to_fit();
    const std::int32_t l = Build(std::move(left), depth + 1);
    const std::int32_t r = Build(std::move(right), depth + 1);
    TreeNode& node = (*nodes_)[static_cast<std::size_t>(index)];
    node.column = static_cast<std::int32_t>(split.column);
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return index;
  }

  Split BestSplit(const std::vector<std::size_t>& sample, const ClassCounts& node_counts) {
    const std::size_t num_columns = ts_.matrix.NumColumns();
    std::vector<Column> allowed;
    const bool subset = options_.features_per_split > 0 &&
                        options_.features_per_split < num_columns;
    if (subset) allowed = SampleColumns(*options_.rng, num_columns, options_.features_per_split);

    // Nonzero (value, label) pairs per column for the rows at this node.
    std::map<Column, std::vector<std::pair<double, std::size_t>>> by_column;
    for (std::size_t r : sample) {
      const std::size_t label = LabelIndex(ts_.labels[r]);
      for (const SparseEntry& e : ts_.matrix.rows[r]) {
        if (subset && !std::binary_search(allowed.begin(), allowed.end(), e.column)) continue;
        by_column[e.column].emplace_back(e.weight, label);
      }
    }

    const double n = static_cast<double>(sample.size());
    Split best;
    std::vector<std::pair<double, ClassCounts>> groups;
    for (auto& [column, entries] : by_column) {
      // Distinct values with their class counts; implicit zeros form a group.
      std::sort(entries.begin(), entries.end());
      groups.clear();
      ClassCounts zeros = node_counts;
      for (const auto& [value, label] : entries) {
        --zeros[label];
        if (groups.empty() || groups.back().first != value) groups.push_back({value, {}});
        ++groups.back().second[label];
      }
      if (Sum(zeros) > 0) {
        const auto pos = std::lower_bound(
            groups.begin(), groups.end(), 0.0,
            [](const auto& g, double v) { return g.first < v; });
        groups.insert(pos, {0.0, zeros});
      }
      if (groups.size() < 2) continue;

      ClassCounts left{};
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        for (std::size_t c = 0; c < kNumLabels; ++c) left[c] += groups[g].second[c];
        ClassCounts right{};
        for (std::size_t c = 0; c < kNumLabels; ++c) right[c] = node_counts[c] - left[c];
        const double nl = Sum(left);
        const double nr = Sum(right);
        const double impurity = (nl * Gini(left, nl) + nr * Gini(right, nr)) / n;
        if (impurity < best.impurity) {
          const double lo = groups[g].first;
          const double hi = groups[g + 1].first;
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = Split{column, threshold, impurity, true};
        }
      }
    }
    return best;
  }

  const TrainingSet& ts_;
  const TreeParams& params_;
  const GrowOptions& options_;
  std::vector<TreeNode>* nodes_ = nullptr;
};

}  // namespace

double GiniImpurity(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0) ThrowUsage("gini impurity needs non-negative counts");
    total += c;
  }
  if (!(total > 0.0)) ThrowUsage("gini impurity needs at least one positive count");
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += (c / total) * (c / total);
  return 1.0 - sum_sq;
}

double GiniImpurity(const ClassCounts& counts) {
  const std::array<double, kNumLabels> d = {static_cast<double>(counts[0]),
                                            static_cast<double>(counts[1]),
                                            static_cast<double>(counts[2])};
  return GiniImpurity(std::span<const double>(d));
}

int TreeModel::Depth() const {
  if (nodes.empty()) return 0;
  int deepest = 0;
  std::vector<std::pair<std::int32_t, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const TreeNode& node = nodes[static_cast<std::size_t>(i)];
    if (!node.IsLeaf()) {
      stack.push_back({node.left, d + 1});
      stack.push_back({node.right, d + 1});
    }
  }
  return deepest;
}

const TreeNode& TreeModel::LeafFor(const SparseVector& x) const {
  const TreeNode* node = &nodes.at(0);
  while (!node->IsLeaf()) {
    const double v = ValueAt(x, static_cast<Column>(node->column));
    node = &nodes[static_cast<std::size_t>(v <= node->threshold ? node->left : node->right)];
  }
  return *node;
}

TreeModel GrowTree(const TrainingSet& ts, const TreeParams& params, const GrowOptions& options) {
  ValidateTrainingSet(ts);
  if (options.features_per_split > 0 && options.features_per_split < ts.matrix.NumColumns() &&
      options.rng == nullptr) {
    ThrowUsage("feature subsampling needs a random generator");
  }
  return TreeGrower(ts, params, options).Grow();
}

TreeModel TrainDecisionTree(const TrainingSet& ts, const TreeParams& params) {
  ValidateTrainingSet(ts);
  std::vector<std::size_t> rows(ts.Size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  GrowOptions options;
  options.sample = rows;
  return GrowTree(ts, params, options);
}

Prediction Predict(const TreeModel& model, const SparseVector& x) {
  CheckDimension(x, model.num_columns);
  const TreeNode& leaf = model.LeafFor(x);
  const double total = Sum(leaf.counts);
  Prediction out;
  for (std::size_t c = 0; c < kNumLabels; ++c) out.scores[c] = leaf.counts[c] / total;
  out.label = ArgmaxLabel(out.scores, LabelSet::FromBits(0x7));
  return out;
}

}  // namespace tweetsent
