// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/linear.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "tweetsent/error.hpp"
#include "tweetsent/rng.hpp"

namespace tweetsent {
namespace {

std::vector<std::size_t> PresentClasses(LabelSet classes) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (classes.Contains(LabelAt(c))) out.push_back(c);
  }
  return out;
}

double SparseDot(const std::vector<double>& w, const SparseVector& x) {
  double sum = 0.0;
  for (const SparseEntry& e : x) sum += w[e.column] * e.weight;
  return sum;
}

// Pegasos state for one binary problem. The weight vector is scale * v, with
// the bias stored in the last slot of v against a constant feature of 1.
class PegasosLearner {
 public:
  PegasosLearner(std::size_t num_columns, double l2, bool project)
      : v_(num_columns + 1, 0.0), l2_(l2), project_(project) {}

  void Step(const SparseVector& x, double y, std::uint64_t t) {
    const double eta = 1.0 / (l2_ * static_cast<double>(t));
    const double margin = y * Score(x);

    const double shrink = 1.0 - eta * l2_;
    if (shrink <= 0.0) {
      std::fill(v_.begin(), v_.end(), 0.0);
      scale_ = 1.0;
      sq_norm_ = 0.0;
    } else {
      scale_ *= shrink;
    }

    if (margin < 1.0) {
      const double a = eta * y / scale_;
      for (const SparseEntry& e : x) Add(e.column, a * e.weight);
      Add(v_.size() - 1, a);
    }

    if (project_ && sq_norm_ > 0.0) {
      const double norm = scale_ * std::sqrt(sq_norm_);
      const double radius = 1.0 / std::sqrt(l2_);
      if (norm > radius) scale_ *= radius / norm;
    }
    if (scale_ < 1e-9) Renormalize();
  }

  double Score(const SparseVector& x) const {
    double sum = v_.back();
    for (const SparseEntry& e : x) sum += v_[e.column] * e.weight;
    return scale_ * sum;
  }

  double SquaredNorm() const { return scale_ * scale_ * sq_norm_; }

  void Export(std::vector<double>& weights, double& bias) const {
    weights.assign(v_.size() - 1, 0.0);
    for (std::size_t j = 0; j + 1 < v_.size(); ++j) weights[j] = scale_ * v_[j];
    bias = scale_ * v_.back();
  }

 private:
  void Add(std::size_t j, double delta) {
    sq_norm_ += delta * (2.0 * v_[j] + delta);
    v_[j] += delta;
  }

  void Renormalize() {
    sq_norm_ = 0.0;
    for (double& w : v_) {
      w *= scale_;
      sq_norm_ += w * w;
    }
    scale_ = 1.0;
  }

  std::vector<double> v_;
  double scale_ = 1.0;
  double sq_norm_ = 0.0;
  double l2_;
  bool project_;
};

}  // namespace

LinearModel LinearModel::Zero(LinearKind kind, LabelSet classes, std::size_t num_columns) {
  LinearModel m;
  m.kind = kind;
  m.classes = classes;
  m.num_columns = num_columns;
  for (auto& w : m.weights) w.assign(num_columns, 0.0);
  return m;
}

double LinearModel::Margin(std::size_t cls, const SparseVector& x) const {
  return SparseDot(weights[cls], x) + bias[cls];
}

double MaxEntObjective(const TrainingSet& ts, const LinearModel& point, double l2,
                       LinearModel* gradient) {
  const std::vector<std::size_t> classes = PresentClasses(ts.class_set);
  const double inv_n = 1.0 / static_cast<double>(ts.Size());
  if (gradient) *gradient = LinearModel::Zero(point.kind, point.classes, point.num_columns);

  double nll = 0.0;
  std::array<double, kNumLabels> z{};
  for (std::size_t r = 0; r < ts.Size(); ++r) {
    const SparseVector& x = ts.matrix.rows[r];
    double max_z = -std::numeric_limits<double>::infinity();
    for (std::size_t c : classes) {
      z[c] = point.Margin(c, x);
      max_z = std::max(max_z, z[c]);
    }
    double sum = 0.0;
    for (std::size_t c : classes) sum += std::exp(z[c] - max_z);
    const double log_norm = max_z + std::log(sum);
    const std::size_t gold = LabelIndex(ts.labels[r]);
    nll += log_norm - z[gold];
    if (!gradient) continue;
    for (std::size_t c : classes) {
      const double dz = (std::exp(z[c] - log_norm) - (c == gold ? 1.0 : 0.0)) * inv_n;
      if (dz == 0.0) continue;
      auto& g = gradient->weights[c];
      for (const SparseEntry& e : x) g[e.column] += dz * e.weight;
      gradient->bias[c] += dz;
    }
  }

  double penalty = 0.0;
  for (std::size_t c : classes) {
    const auto& w = point.weights[c];
    for (std::size_t j = 0; j < w.size(); ++j) {
      penalty += w[j] * w[j];
      if (gradient) gradient->weights[c][j] += l2 * w[j];
    }
  }
  return nll * inv_n + 0.5 * l2 * penalty;
}

LinearModel TrainMaxEnt(const TrainingSet& ts, const MaxEntParams& params) {
  ValidateTrainingSet(ts);
  if (!(params.learning_rate > 0.0)) ThrowUsage("maxent learning rate must be positive");
  if (!(params.l2 >= 0.0)) ThrowUsage("maxent l2 must be non-negative");
  if (params.epochs < 1) ThrowUsage("maxent epochs must be at least 1");

  LinearModel model = LinearModel::Zero(LinearKind::kMaxEnt, ts.class_set, ts.matrix.NumColumns());
  const std::vector<std::size_t> classes = PresentClasses(ts.class_set);
  LinearModel grad;
  MaxEntObjective(ts, model, params.l2, &grad);
  model.loss_trace.reserve(static_cast<std::size_t>(params.epochs));
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t c : classes) {
      auto& w = model.weights[c];
      const auto& g = grad.weights[c];
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= params.learning_rate * g[j];
      model.bias[c] -= params.learning_rate * grad.bias[c];
    }
    const double loss = MaxEntObjective(ts, model, params.l2, &grad);
    if (!std::isfinite(loss)) {
      ThrowUsage("maxent loss became non-finite at epoch " + std::to_string(epoch + 1) +
                 "; the learning rate is too large");
    }
    model.loss_trace.push_back(loss);
  }
  return model;
}

LinearModel TrainLinearSvm(const TrainingSet& ts, const SvmParams& params) {
  ValidateTrainingSet(ts);
  if (!(params.l2 > 0.0)) ThrowUsage("svm l2 must be positive");
  if (params.epochs < 1) ThrowUsage("svm epochs must be at least 1");
  if (ts.class_set.Size() < 2) ThrowUsage("svm needs at least two classes to train");

  const std::size_t dims = ts.matrix.NumColumns();
  LinearModel model = LinearModel::Zero(LinearKind::kSvm, ts.class_set, dims);
  model.loss_trace.assign(static_cast<std::size_t>(params.epochs), 0.0);
  const double inv_n = 1.0 / static_cast<double>(ts.Size());

  for (std::size_t c : PresentClasses(ts.class_set)) {
    PegasosLearner learner(dims, params.l2, params.project);
    Rng rng(params.seed, c);
    std::vector<std::size_t> order(ts.Size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      rng.Shuffle(std::span<std::size_t>(order));
      for (std::size_t r : order) {
        const double y = LabelIndex(ts.labels[r]) == c ? 1.0 : -1.0;
        learner.Step(ts.matrix.rows[r], y, ++t);
      }
      double hinge = 0.0;
      for (std::size_t r = 0; r < ts.Size(); ++r) {
        const double y = LabelIndex(ts.labels[r]) == c ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * learner.Score(ts.matrix.rows[r]));
      }
      model.loss_trace[static_cast<std::size_t>(epoch)] +=
          0.5 * params.l2 * learner.SquaredNorm() + hinge * inv_n;
    }
    learner.Export(model.weights[c], model.bias[c]);
  }
  return model;
}

Prediction Predict(const LinearModel& model, const SparseVector& x) {
  CheckDimension(x, model.num_columns);
  Prediction out;
  const std::vector<std::size_t> classes = PresentClasses(model.classes);
  for (std::size_t c : classes) out.scores[c] = model.Margin(c, x);
  if (model.kind == LinearKind::kMaxEnt && !classes.empty()) {
    double max_z = -std::numeric_limits<double>::infinity();
    for (std::size_t c : classes) max_z = std::max(max_z, out.scores[c]);
    double sum = 0.0;
    for (std::size_t c : classes) {
      out.scores[c] = std::exp(out.scores[c] - max_z);
      sum += out.scores[c];
    }
    for (std::size_t c : classes) out.scores[c] /= sum;
  }
  out.label = ArgmaxLabel(out.scores, model.classes);
  return out;
}

}  // namespace tweetsent
