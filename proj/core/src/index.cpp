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

#include "prunerank/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace prunerank {

EmbeddingIndex::EmbeddingIndex(std::vector<std::string> doc_ids, std::vector<float> values,
                               std::size_t dim, std::string tag)
    : doc_ids_(std::move(doc_ids)), values_(std::move(values)), dim_(dim), tag_(std::move(tag)) {
    if (dim_ < 1) {
        throw Error("index dimension must be >= 1");
    }
    if (values_.size() != doc_ids_.size() * dim_) {
        throw Error("index value count " + std::to_string(values_.size()) +
                    " does not match " + std::to_string(doc_ids_.size()) + " docs of dim " +
                    std::to_string(dim_));
    }
    std::unordered_set<std::string> seen;
    seen.reserve(doc_ids_.size());
    for (const auto& id : doc_ids_) {
        if (!seen.insert(id).second) {
            throw Error("duplicate doc id '" + id + "' in index");
        }
    }
}

EmbeddingIndex EmbeddingIndex::from_matrix(const DenseMatrix& m, std::vector<std::string> doc_ids,
                                           std::string tag) {
    if (doc_ids.size() != m.rows()) {
        throw Error("id count " + std::to_string(doc_ids.size()) + " does not match " +
                    std::to_string(m.rows()) + " matrix rows");
    }
    std::vector<float> values(m.rows() * m.cols());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = static_cast<float>(m.data()[i]);
    }
    return EmbeddingIndex(std::move(doc_ids), std::move(values), m.cols(), std::move(tag));
}

std::vector<double> score_all(const EmbeddingIndex& index, std::span<const double> q) {
    if (q.size() != index.dim()) {
        throw Error("dimension mismatch: query has length " + std::to_string(q.size()) +
                    ", index has dim " + std::to_string(index.dim()));
    }
    const std::size_t n = index.size();
    const std::size_t dim = index.dim();
    std::vector<double> scores(n);
    const float* values = index.values().data();
    for (std::size_t i = 0; i < n; ++i) {
        const float* row = values + i * dim;
        // Four interleaved partial sums, combined in a fixed order; the
        // summation sequence is part of the determinism contract.
        double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
        std::size_t j = 0;
        for (; j + 4 <= dim; j += 4) {
            acc0 += static_cast<double>(row[j]) * q[j];
            acc1 += static_cast<double>(row[j + 1]) * q[j + 1];
            acc2 += static_cast<double>(row[j + 2]) * q[j + 2];
            acc3 += static_cast<double>(row[j + 3]) * q[j + 3];
        }
        double tail = 0.0;
        for (; j < dim; ++j) tail += static_cast<double>(row[j]) * q[j];
        scores[i] = ((acc0 + acc1) + (acc2 + acc3)) + tail;
    }
    return scores;
}

std::vector<ScoredHit> top_k(std::span<const double> scores,
                             const std::vector<std::string>& doc_ids, std::size_t k) {
    if (k < 1) {
        throw Error("k must be >= 1");
    }
    if (scores.size() != doc_ids.size()) {
        throw Error("score count " + std::to_string(scores.size()) + " does not match " +
                    std::to_string(doc_ids.size()) + " doc ids");
    }
    const std::size_t n = scores.size();
    const std::size_t take = std::min(k, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return doc_ids[a] < doc_ids[b];
    };
    if (take < n) {
        std::nth_element(order.begin(), order.begin() + take, order.end(), better);
        order.resize(take);
    }
    std::sort(order.begin(), order.end(), better);

    std::vector<ScoredHit> hits;
    hits.reserve(take);
    for (std::size_t idx : order) {
        if (!std::isfinite(scores[idx])) {
            throw Error("non-finite score for doc '" + doc_ids[idx] + "'");
        }
        hits.push_back({doc_ids[idx], scores[idx]});
    }
    return hits;
}

Ranking search(const EmbeddingIndex& index, const std::string& query_id,
               std::span<const double> q, std::size_t k) {
    const std::vector<double> scores = score_all(index, q);
    return Ranking{query_id, top_k(scores, index.doc_ids(), k)};
}

namespace {

// Shared fan-out: one ranking slot per query, contiguous query chunks per
// thread, no shared mutable state beyond the preallocated output.
template <typename SearchOne>
std::vector<Ranking> batch_over_queries(const std::vector<std::string>& query_ids,
                                        const DenseMatrix& queries, std::size_t n_threads,
                                        SearchOne&& search_one) {
    if (query_ids.size() != queries.rows()) {
        throw Error("query id count " + std::to_string(query_ids.size()) +
                    " does not match " + std::to_string(queries.rows()) + " query rows");
    }
    std::vector<Ranking> rankings(query_ids.size());
    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            rankings[i] = search_one(i);
        }
    };
    if (n_threads <= 1 || query_ids.size() < 2) {
        worker(0, query_ids.size());
        return rankings;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (query_ids.size() + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(query_ids.size(), begin + chunk);
        if (begin >= end) break;
        workers.emplace_back(worker, begin, end);
    }
    for (auto& w : workers) w.join();
    return rankings;
}

}  // namespace

std::vector<Ranking> search_batch(const EmbeddingIndex& index,
                                  const std::vector<std::string>& query_ids,
                                  const DenseMatrix& queries, std::size_t k,
                                  std::size_t n_threads) {
    return batch_over_queries(query_ids, queries, n_threads, [&](std::size_t i) {
        return search(index, query_ids[i], queries.row(i), k);
    });
}

Ranking search(const DenseMatrix& docs, const std::vector<std::string>& doc_ids,
               const std::string& query_id, std::span<const double> q, std::size_t k) {
    if (doc_ids.size() != docs.rows()) {
        throw Error("id count " + std::to_string(doc_ids.size()) + " does not match " +
                    std::to_string(docs.rows()) + " matrix rows");
    }
    const std::vector<double> scores = matvec(docs, q);
    return Ranking{query_id, top_k(scores, doc_ids, k)};
}

std::vector<Ranking> search_batch(const DenseMatrix& docs,
                                  const std::vector<std::string>& doc_ids,
                                  const std::vector<std::string>& query_ids,
                                  const DenseMatrix& queries, std::size_t k,
                                  std::size_t n_threads) {
    return batch_over_queries(query_ids, queries, n_threads, [&](std::size_t i) {
        return search(docs, doc_ids, query_ids[i], queries.row(i), k);
    });
}

}  // namespace prunerank
