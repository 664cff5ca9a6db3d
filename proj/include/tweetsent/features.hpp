// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_FEATURES_HPP
#define TWEETSENT_FEATURES_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetsent {

using Column = std::uint32_t;

struct SparseEntry {
  Column column = 0;
  double weight = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Entries sorted by strictly increasing column.
using SparseVector = std::vector<SparseEntry>;

/// Frozen term list with document frequencies from the corpus it was fit on.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws Error(kUsage) if terms repeat, sizes differ, or a frequency is
  /// outside 1..fit_docs.
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> doc_freq,
             std::uint64_t fit_docs);

  std::size_t Size() const { return terms_.size(); }
  const std::vector<std::string>& Terms() const { return terms_; }
  const std::vector<std::uint64_t>& DocFreq() const { return doc_freq_; }
  std::uint64_t FitDocs() const { return fit_docs_; }
  std::optional<Column> Find(std::string_view term) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.fit_docs_ == b.fit_docs_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> doc_freq_;
  std::uint64_t fit_docs_ = 0;
  std::unordered_map<std::string, Column> index_;
};

/// Keeps terms occurring in at least min_df documents, in first-appearance
/// order. Throws Error(kUsage) for an empty corpus or min_df == 0.
Vocabulary BuildVocabulary(std::span<const std::vector<std::string>> docs,
                           std::uint64_t min_df = 1);

/// Term counts; out-of-vocabulary tokens are dropped.
SparseVector VectorizeCounts(const Vocabulary& vocab, std::span<const std::string> tokens);

/// ln(n_docs / df). Throws Error(kUsage) unless 1 <= df <= n_docs.
double Idf(std::uint64_t n_docs, std::uint64_t df);

enum class Weighting { kCounts, kTfidf };

std::string_view WeightingName(Weighting weighting);
Weighting ParseWeighting(std::string_view name);

struct DocTermMatrix {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<SparseVector> rows;
  Weighting weighting = Weighting::kCounts;

  std::size_t NumDocs() const { return rows.size(); }
  std::size_t NumColumns() const { return vocab ? vocab->Size() : 0; }

  /// Matrix restricted to the given rows, in the given order.
  DocTermMatrix Select(std::span<const std::size_t> row_ids) const;
};

DocTermMatrix VectorizeCorpus(std::shared_ptr<const Vocabulary> vocab,
                              std::span<const std::vector<std::string>> docs);

/// Per-column idf from the vocabulary's fit statistics.
std::vector<double> IdfWeights(const Vocabulary& vocab);

/// Multiplies every count by its column's idf; entries that become exactly 0
/// are dropped. Throws Error(kUsage) unless the input has counts weighting.
DocTermMatrix TfidfTransform(const DocTermMatrix& counts);

/// Applies per-column idf weights to a single count vector.
SparseVector ApplyIdf(const SparseVector& counts, std::span<const double> idf);

/// CSV with header `doc_id,term,weight`, one line per nonzero entry.
void DumpMatrixCsv(std::ostream& out, const DocTermMatrix& m,
                   std::span<const std::string> doc_ids);

}  // namespace tweetsent

#endif  // TWEETSENT_FEATURES_HPP
