// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetsent/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "tweetsent/error.hpp"
#include "tweetsent/format.hpp"

namespace tweetsent {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> doc_freq,
                       std::uint64_t fit_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), fit_docs_(fit_docs) {
  if (terms_.size() != doc_freq_.size()) ThrowUsage("vocabulary terms/doc_freq size mismatch");
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<Column>(i)).second) {
      ThrowUsage("vocabulary term '" + terms_[i] + "' appears twice");
    }
    if (doc_freq_[i] == 0 || doc_freq_[i] > fit_docs_) {
      ThrowUsage("vocabulary term '" + terms_[i] + "' has document frequency outside 1.." +
                 std::to_string(fit_docs_));
    }
  }
}

std::optional<Column> Vocabulary::Find(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary BuildVocabulary(std::span<const std::vector<std::string>> docs, std::uint64_t min_df) {
  if (docs.empty()) ThrowUsage("cannot build a vocabulary from an empty corpus");
  if (min_df == 0) ThrowUsage("min_df must be at least 1");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> df;
  std::unordered_map<std::string, std::size_t> last_doc;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const std::string& token : docs[d]) {
      auto [it, inserted] = last_doc.try_emplace(token, d);
      if (inserted) {
        order.push_back(token);
        df[token] = 1;
      } else if (it->second != d) {
        it->second = d;
        ++df[token];
      }
    }
  }

  std::vector<std::string> terms;
  std::vector<std::uint64_t> freq;
  for (std::string& term : order) {
    const std::uint64_t f = df[term];
    if (f >= min_df) {
      terms.push_back(std::move(term));
      freq.push_back(f);
    }
  }
  return Vocabulary(std::move(terms), std::move(freq), docs.size());
}

SparseVector VectorizeCounts(const Vocabulary& vocab, std::span<const std::string> tokens) {
  std::map<Column, double> counts;
  for (const std::string& token : tokens) {
    if (auto col = vocab.Find(token)) counts[*col] += 1.0;
  }
  SparseVector out;
  out.reserve(counts.size());
  for (const auto& [col, count] : counts) out.push_back({col, count});
  return out;
}

double Idf(std::uint64_t n_docs, std::uint64_t df) {
  if (df == 0 || df > n_docs) {
    ThrowUsage("idf requires 1 <= df <= n_docs (df=" + std::to_string(df) +
               ", n_docs=" + std::to_string(n_docs) + ")");
  }
  return std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

std::string_view WeightingName(Weighting weighting) {
  return weighting == Weighting::kCounts ? "counts" : "tfidf";
}

Weighting ParseWeighting(std::string_view name) {
  if (name == "counts") return Weighting::kCounts;
  if (name == "tfidf") return Weighting::kTfidf;
  ThrowUsage("unknown weighting '" + std::string(name) + "' (expected counts or tfidf)");
}

DocTermMatrix DocTermMatrix::Select(std::span<const std::size_t> row_ids) const {
  DocTermMatrix out{vocab, {}, weighting};
  out.rows.reserve(row_ids.size());
  for (std::size_t r : row_ids) out.rows.push_back(rows.at(r));
  return out;
}

DocTermMatrix VectorizeCorpus(std::shared_ptr<const Vocabulary> vocab,
                              std::span<const std::vector<std::string>> docs) {
  DocTermMatrix m{std::move(vocab), {}, Weighting::kCounts};
  m.rows.reserve(docs.size());
  for (const auto& tokens : docs) m.rows.push_back(VectorizeCounts(*m.vocab, tokens));
  return m;
}

std::vector<double> IdfWeights(const Vocabulary& vocab) {
  std::vector<double> idf(vocab.Size());
  for (std::size_t c = 0; c < idf.size(); ++c) idf[c] = Idf(vocab.FitDocs(), vocab.DocFreq()[c]);
  return idf;
}

SparseVector ApplyIdf(const SparseVector& counts, std::span<const double> idf) {
  SparseVector out;
  out.reserve(counts.size());
  for (const SparseEntry& e : counts) {
    const double w = e.weight * idf[e.column];
    if (w != 0.0) out.push_back({e.column, w});
  }
  return out;
}

DocTermMatrix TfidfTransform(const DocTermMatrix& counts) {
  if (counts.weighting != Weighting::kCounts) {
    ThrowUsage("tfidf_transform expects a counts-weighted matrix");
  }
  DocTermMatrix out{counts.vocab, {}, Weighting::kTfidf};
  if (!counts.vocab) return out;
  const std::vector<double> idf = IdfWeights(*counts.vocab);
  out.rows.reserve(counts.rows.size());
  for (const SparseVector& row : counts.rows) out.rows.push_back(ApplyIdf(row, idf));
  return out;
}

void DumpMatrixCsv(std::ostream& out, const DocTermMatrix& m,
                   std::span<const std::string> doc_ids) {
  out << "doc_id,term,weight\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const SparseEntry& e : m.rows[r]) {
      out << CsvEscape(r < doc_ids.size() ? doc_ids[r] : std::to_string(r)) << ','
          << CsvEscape(m.vocab->Terms()[e.column]) << ',' << FormatDouble(e.weight) << '\n';
    }
  }
}

}  // namespace tweetsent
