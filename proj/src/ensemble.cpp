// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "tweetsent/error.hpp"

namespace tweetsent {
namespace {

struct EnsembleSetup {
  EnsembleKind kind;
  int n_members;
  TreeParams tree;
  std::size_t features_per_split;  // 0: all
  std::uint64_t seed;
  bool bootstrap;
};

TreeModel GrowMember(const TrainingSet& ts, const EnsembleSetup& setup, std::size_t member) {
  Rng rng(setup.seed, member);
  std::vector<std::size_t> sample(ts.Size());
  if (setup.bootstrap) {
    for (auto& r : sample) r = static_cast<std::size_t>(rng.Below(ts.Size()));
  } else {
    std::iota(sample.begin(), sample.end(), std::size_t{0});
  }
  GrowOptions options;
  options.sample = sample;
  options.features_per_split = setup.features_per_split;
  options.rng = &rng;
  return GrowTree(ts, setup.tree, options);
}

EnsembleModel TrainEnsemble(const TrainingSet& ts, const EnsembleSetup& setup, unsigned threads) {
  ValidateTrainingSet(ts);
  if (setup.n_members < 1) ThrowUsage("ensemble needs at least one member");

  EnsembleModel model;
  model.kind = setup.kind;
  model.classes = ts.class_set;
  model.num_columns = ts.matrix.NumColumns();
  model.bootstrap = setup.bootstrap;
  model.seed = setup.seed;
  const auto n = static_cast<std::size_t>(setup.n_members);
  model.members.resize(n);
  model.policies.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    model.policies[m] = MemberPolicy{m, setup.features_per_split, ts.Size()};
  }

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t m = 0; m < n; ++m) model.members[m] = GrowMember(ts, setup, m);
    return model;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t m = next++; m < n; m = next++) {
        try {
          model.members[m] = GrowMember(ts, setup, m);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return model;
}

}  // namespace

EnsembleModel TrainBagging(const TrainingSet& ts, const BaggingParams& params, unsigned threads) {
  return TrainEnsemble(ts,
                       EnsembleSetup{EnsembleKind::kBagging, params.n_members, params.tree, 0,
                                    params.seed, params.bootstrap},
                       threads);
}

EnsembleModel TrainRandomForest(const TrainingSet& ts, const ForestParams& params,
                                unsigned threads) {
  ValidateTrainingSet(ts);
  const std::size_t columns = ts.matrix.NumColumns();
  std::size_t k = params.features_per_split;
  if (k == 0) {
    k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(columns))));
    k = std::max<std::size_t>(k, 1);
  }
  if (columns > 0 && k > columns) {
    ThrowUsage("random forest features_per_split " + std::to_string(k) +
               " exceeds the vocabulary size " + std::to_string(columns));
  }
  return TrainEnsemble(
      ts,
      EnsembleSetup{EnsembleKind::kRandomForest, params.n_members, params.tree, k, params.seed,
                   params.bootstrap},
      threads);
}

Prediction Predict(const EnsembleModel& model, const SparseVector& x) {
  CheckDimension(x, model.num_columns);
  Prediction out;
  for (const TreeModel& member : model.members) {
    out.scores[LabelIndex(Predict(member, x).label)] += 1.0;
  }
  for (double& s : out.scores) s /= static_cast<double>(model.members.size());
  out.label = ArgmaxLabel(out.scores, LabelSet::FromBits(0x7));
  return out;
}

}  // namespace tweetsent
