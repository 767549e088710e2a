// Copyright 2026-present the prunerank project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "prunerank/matrix.hpp"

namespace prunerank {

/// Flat embedding index: one 32-bit float row per document plus its id.
/// Scores are always accumulated in 64-bit floats. Immutable after
/// construction; concurrent queries share it read-only.
class EmbeddingIndex {
public:
    EmbeddingIndex(std::vector<std::string> doc_ids, std::vector<float> values,
                   std::size_t dim, std::string tag);

    /// Narrows a 64-bit matrix to the index's 32-bit storage.
    static EmbeddingIndex from_matrix(const DenseMatrix& m, std::vector<std::string> doc_ids,
                                      std::string tag);

    std::size_t size() const { return doc_ids_.size(); }
    std::size_t dim() const { return dim_; }
    const std::string& tag() const { return tag_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    const std::vector<float>& values() const { return values_; }

    std::span<const float> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }

private:
    std::vector<std::string> doc_ids_;
    std::vector<float> values_;  // n x dim, row-major
    std::size_t dim_;
    std::string tag_;
};

struct ScoredHit {
    std::string doc_id;
    double score;
};

/// Ranked result list for one query: hits sorted by score descending, ties
/// by doc_id ascending (byte-wise), no duplicate ids.
struct Ranking {
    std::string query_id;
    std::vector<ScoredHit> hits;
};

/// Dot-product scores of the query against every document, in row order.
std::vector<double> score_all(const EmbeddingIndex& index, std::span<const double> q);

/// The k highest-scoring documents (all of them if fewer than k), ordered
/// per the Ranking contract. Partial selection: expected O(n + k log k).
std::vector<ScoredHit> top_k(std::span<const double> scores,
                             const std::vector<std::string>& doc_ids, std::size_t k);

Ranking search(const EmbeddingIndex& index, const std::string& query_id,
               std::span<const double> q, std::size_t k);

/// One ranking per query row. Queries are independent; with n_threads > 1
/// they are scored in parallel, output is identical for any thread count.
std::vector<Ranking> search_batch(const EmbeddingIndex& index,
                                  const std::vector<std::string>& query_ids,
                                  const DenseMatrix& queries, std::size_t k,
                                  std::size_t n_threads = 1);

/// 64-bit search path: documents stay at full precision. Used where score
/// identities must survive a change of basis (the c=0 equivalence); the
/// 32-bit index narrows scores by ~1e-7 relative, enough to reorder
/// near-tied documents.
Ranking search(const DenseMatrix& docs, const std::vector<std::string>& doc_ids,
               const std::string& query_id, std::span<const double> q, std::size_t k);

std::vector<Ranking> search_batch(const DenseMatrix& docs,
                                  const std::vector<std::string>& doc_ids,
                                  const std::vector<std::string>& query_ids,
                                  const DenseMatrix& queries, std::size_t k,
                                  std::size_t n_threads = 1);

}  // namespace prunerank
