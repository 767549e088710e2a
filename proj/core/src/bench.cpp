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

#include "prunerank/bench.hpp"

#include <algorithm>
#include <chrono>

#include "prunerank/error.hpp"

namespace prunerank {

namespace {

double run_pass(const EmbeddingIndex& index, const DenseMatrix& queries, std::size_t k,
                const PrunedTransform* transform) {
    double checksum = 0.0;
    for (std::size_t qi = 0; qi < queries.rows(); ++qi) {
        std::vector<double> scores;
        if (transform != nullptr) {
            const auto projected = transform_query(queries.row(qi), *transform);
            scores = score_all(index, projected);
        } else {
            scores = score_all(index, queries.row(qi));
        }
        const auto hits = top_k(scores, index.doc_ids(), k);
        checksum += hits.front().score;
    }
    return checksum;
}

}  // namespace

ThroughputReport bench_throughput(const EmbeddingIndex& index, const DenseMatrix& queries,
                                  std::size_t repetitions, std::size_t k,
                                  const PrunedTransform* transform) {
    if (repetitions == 0) {
        throw Error("repetitions must be at least 1");
    }
    if (queries.rows() == 0) {
        throw Error("no queries to benchmark");
    }
    const std::size_t scored_dim =
        transform != nullptr ? transform->dim_out : queries.cols();
    if (transform != nullptr && queries.cols() != transform->dim_in) {
        throw Error("query dimension " + std::to_string(queries.cols()) +
                    " does not match transform input " + std::to_string(transform->dim_in));
    }
    if (scored_dim != index.dim()) {
        throw Error("scored dimension " + std::to_string(scored_dim) +
                    " does not match index dimension " + std::to_string(index.dim()));
    }

    ThroughputReport report;
    report.dim = index.dim();
    report.n_docs = index.size();
    report.n_queries = queries.rows();
    report.k = k;
    report.repetitions = repetitions;

    report.checksum = run_pass(index, queries, k, transform);  // warm-up

    using clock = std::chrono::steady_clock;
    report.seconds_per_rep.reserve(repetitions);
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const auto start = clock::now();
        report.checksum += run_pass(index, queries, k, transform);
        const auto stop = clock::now();
        report.seconds_per_rep.push_back(std::chrono::duration<double>(stop - start).count());
    }

    std::vector<double> sorted = report.seconds_per_rep;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.median_seconds = sorted.size() % 2 == 1
                                ? sorted[mid]
                                : 0.5 * (sorted[mid - 1] + sorted[mid]);
    report.queries_per_second = static_cast<double>(report.n_queries) / report.median_seconds;
    report.mean_latency_seconds = report.median_seconds / static_cast<double>(report.n_queries);
    return report;
}

}  // namespace prunerank
