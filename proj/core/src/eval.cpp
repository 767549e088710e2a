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

#include "prunerank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace prunerank {

bool Qrels::has_query(const std::string& query_id) const {
    return judgments.find(query_id) != judgments.end();
}

int Qrels::grade(const std::string& query_id, const std::string& doc_id) const {
    const auto q = judgments.find(query_id);
    if (q == judgments.end()) return 0;
    const auto d = q->second.find(doc_id);
    return d == q->second.end() ? 0 : d->second;
}

std::size_t Qrels::relevant_count(const std::string& query_id, int threshold) const {
    const auto q = judgments.find(query_id);
    if (q == judgments.end()) return 0;
    std::size_t count = 0;
    for (const auto& [doc, grade] : q->second) {
        if (grade >= threshold) ++count;
    }
    return count;
}

double average_precision(const Ranking& r, const Qrels& qrels, int rel_threshold,
                         std::size_t depth) {
    const std::size_t total_relevant = qrels.relevant_count(r.query_id, rel_threshold);
    if (total_relevant == 0) return 0.0;

    double sum = 0.0;
    std::size_t hits_so_far = 0;
    const std::size_t limit = std::min(depth, r.hits.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (qrels.grade(r.query_id, r.hits[i].doc_id) >= rel_threshold) {
            ++hits_so_far;
            sum += static_cast<double>(hits_so_far) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(total_relevant);
}

namespace {

double gain_of(int grade, GainFunction gain) {
    if (gain == GainFunction::kExponential) {
        return std::exp2(static_cast<double>(grade)) - 1.0;
    }
    return static_cast<double>(grade);
}

}  // namespace

double ndcg_at_k(const Ranking& r, const Qrels& qrels, std::size_t k, GainFunction gain) {
    double dcg = 0.0;
    const std::size_t limit = std::min(k, r.hits.size());
    for (std::size_t i = 0; i < limit; ++i) {
        const int grade = qrels.grade(r.query_id, r.hits[i].doc_id);
        dcg += gain_of(grade, gain) / std::log2(static_cast<double>(i) + 2.0);
    }

    // Ideal ordering over all judged docs of the query.
    const auto q = qrels.judgments.find(r.query_id);
    if (q == qrels.judgments.end()) return 0.0;
    std::vector<int> grades;
    grades.reserve(q->second.size());
    for (const auto& [doc, grade] : q->second) grades.push_back(grade);
    std::sort(grades.begin(), grades.end(), std::greater<int>());

    double idcg = 0.0;
    const std::size_t ideal_limit = std::min(k, grades.size());
    for (std::size_t i = 0; i < ideal_limit; ++i) {
        idcg += gain_of(grades[i], gain) / std::log2(static_cast<double>(i) + 2.0);
    }
    return idcg > 0.0 ? dcg / idcg : 0.0;
}

double mrr_at_k(const Ranking& r, const Qrels& qrels, std::size_t k, int rel_threshold) {
    const std::size_t limit = std::min(k, r.hits.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (qrels.grade(r.query_id, r.hits[i].doc_id) >= rel_threshold) {
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    return 0.0;
}

std::vector<MetricReport> evaluate_run(const std::vector<Ranking>& run, const Qrels& qrels,
                                       const EvalConfig& config, std::ostream* warnings) {
    if (run.empty()) {
        throw Error("empty run");
    }

    std::set<std::string> run_queries;
    std::size_t judged_in_run = 0;
    for (const auto& r : run) {
        run_queries.insert(r.query_id);
        if (qrels.has_query(r.query_id)) {
            ++judged_in_run;
        } else if (warnings != nullptr) {
            *warnings << "warning: query '" << r.query_id
                      << "' has no relevance judgments, skipping\n";
        }
    }
    if (judged_in_run == 0) {
        throw Error("no overlapping queries between run and qrels");
    }

    MetricReport ap{"AP", {}, 0.0};
    MetricReport ndcg{"nDCG@" + std::to_string(config.k), {}, 0.0};
    MetricReport mrr{"MRR@" + std::to_string(config.k), {}, 0.0};

    // Every judged query contributes; judged-but-unretrieved queries score 0.
    for (const auto& [query_id, docs] : qrels.judgments) {
        ap.per_query[query_id] = 0.0;
        ndcg.per_query[query_id] = 0.0;
        mrr.per_query[query_id] = 0.0;
        if (warnings != nullptr && run_queries.find(query_id) == run_queries.end()) {
            *warnings << "warning: judged query '" << query_id
                      << "' missing from run, scored 0\n";
        }
    }
    for (const auto& r : run) {
        if (!qrels.has_query(r.query_id)) continue;
        ap.per_query[r.query_id] =
            average_precision(r, qrels, config.rel_threshold, config.ap_depth);
        ndcg.per_query[r.query_id] = ndcg_at_k(r, qrels, config.k, config.gain);
        mrr.per_query[r.query_id] = mrr_at_k(r, qrels, config.k, config.rel_threshold);
    }

    for (MetricReport* report : {&ap, &ndcg, &mrr}) {
        double sum = 0.0;
        for (const auto& [query, value] : report->per_query) sum += value;
        report->mean = sum / static_cast<double>(report->per_query.size());
    }
    return {ap, ndcg, mrr};
}

}  // namespace prunerank
