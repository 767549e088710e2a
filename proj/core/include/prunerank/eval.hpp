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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "prunerank/index.hpp"

namespace prunerank {

/// Graded relevance judgments: query id -> doc id -> grade >= 0.
struct Qrels {
    std::map<std::string, std::map<std::string, int>> judgments;

    bool has_query(const std::string& query_id) const;
    /// Grade of (query, doc); 0 when the pair is unjudged.
    int grade(const std::string& query_id, const std::string& doc_id) const;
    /// Number of docs judged with grade >= threshold for the query.
    std::size_t relevant_count(const std::string& query_id, int threshold) const;
};

enum class GainFunction {
    kExponential,  // g(rel) = 2^rel - 1
    kLinear,       // g(rel) = rel
};

struct EvalConfig {
    std::size_t k = 10;          // cutoff for nDCG@k and MRR@k
    GainFunction gain = GainFunction::kExponential;
    int rel_threshold = 1;       // grade >= threshold counts as relevant (AP, MRR)
    std::size_t ap_depth = 1000; // ranks considered by AP
};

/// Per-query metric values plus their arithmetic mean.
struct MetricReport {
    std::string metric;
    std::map<std::string, double> per_query;
    double mean = 0.0;
};

/// AP over the top `depth` ranks, normalized by the total judged-relevant
/// count for the query. Returns 0 when the query has no relevant docs.
double average_precision(const Ranking& r, const Qrels& qrels, int rel_threshold,
                         std::size_t depth);

/// nDCG@k with the chosen gain, log2(rank+1) discount, and an ideal ranking
/// drawn from all judged docs of the query. Returns 0 when the ideal DCG is 0.
double ndcg_at_k(const Ranking& r, const Qrels& qrels, std::size_t k, GainFunction gain);

/// Reciprocal rank of the first relevant hit within the top k; 0 if none.
double mrr_at_k(const Ranking& r, const Qrels& qrels, std::size_t k, int rel_threshold);

/// Evaluates a run against qrels, producing one report per metric
/// (AP, nDCG@k, MRR@k). Queries judged but missing from the run score 0 and
/// count toward the means; run queries without judgments are skipped with a
/// warning on `warnings`. Throws when no run query has judgments.
std::vector<MetricReport> evaluate_run(const std::vector<Ranking>& run, const Qrels& qrels,
                                       const EvalConfig& config,
                                       std::ostream* warnings = nullptr);

}  // namespace prunerank
