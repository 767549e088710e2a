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

#include <cstddef>
#include <vector>

#include "prunerank/index.hpp"
#include "prunerank/matrix.hpp"
#include "prunerank/pca.hpp"

namespace prunerank {

/// Wall-clock throughput of exact search over one index.
struct ThroughputReport {
    std::size_t dim = 0;        // scored dimension (m for a pruned index)
    std::size_t n_docs = 0;
    std::size_t n_queries = 0;
    std::size_t k = 0;
    std::size_t repetitions = 0;
    std::vector<double> seconds_per_rep;  // full query-set pass, per repetition
    double median_seconds = 0.0;
    double queries_per_second = 0.0;
    double mean_latency_seconds = 0.0;    // median_seconds / n_queries
    double checksum = 0.0;                // sum of top-1 scores, defeats dead-code elimination
};

/// Times score_all + top_k over every query row: one untimed warm-up pass,
/// then `repetitions` timed passes, reporting the median. Scoring is
/// single-threaded so dimension effects are not masked by parallelism.
/// With `transform` set, queries are full-dimension and the per-query
/// projection cost is included in the timed region; the index must already
/// hold transformed rows.
ThroughputReport bench_throughput(const EmbeddingIndex& index, const DenseMatrix& queries,
                                  std::size_t repetitions, std::size_t k = 10,
                                  const PrunedTransform* transform = nullptr);

}  // namespace prunerank
