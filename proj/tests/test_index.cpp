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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "prunerank/index.hpp"
#include "prunerank/pca.hpp"
#include "prunerank/rng.hpp"

using namespace prunerank;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    NormalSampler sampler(seed);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = sampler.next();
    }
    return m;
}

std::vector<std::string> numbered_ids(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string s = std::to_string(i);
        ids[i] = "d" + std::string(6 - s.size(), '0') + s;
    }
    return ids;
}

// Independent oracle: sort everything, then truncate.
std::vector<ScoredHit> full_sort_top_k(const std::vector<double>& scores,
                                       const std::vector<std::string>& ids, std::size_t k) {
    std::vector<ScoredHit> all;
    for (std::size_t i = 0; i < scores.size(); ++i) all.push_back({ids[i], scores[i]});
    std::sort(all.begin(), all.end(), [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    all.resize(std::min(k, all.size()));
    return all;
}

bool same_hits(const std::vector<ScoredHit>& a, const std::vector<ScoredHit>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].doc_id != b[i].doc_id || a[i].score != b[i].score) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("EmbeddingIndex validates its invariants") {
    CHECK_THROWS_AS(EmbeddingIndex({"a"}, {1.0f, 2.0f, 3.0f}, 2, "t"), Error);
    CHECK_THROWS_AS(EmbeddingIndex({"a", "a"}, {1.0f, 2.0f}, 1, "t"), Error);
    CHECK_THROWS_AS(EmbeddingIndex({"a"}, {1.0f}, 0, "t"), Error);

    const EmbeddingIndex ok({"a", "b"}, {1.0f, 2.0f, 3.0f, 4.0f}, 2, "tag");
    CHECK(ok.size() == 2);
    CHECK(ok.dim() == 2);
    CHECK(ok.tag() == "tag");
    CHECK(ok.row(1)[0] == 3.0f);
}

TEST_CASE("from_matrix narrows to 32-bit storage") {
    auto m = DenseMatrix::from_rows({{0.1, 0.2}, {0.3, 0.4}});
    const auto index = EmbeddingIndex::from_matrix(m, {"a", "b"}, "narrow");
    CHECK(index.values()[0] == static_cast<float>(0.1));
    CHECK(index.values()[3] == static_cast<float>(0.4));
    CHECK_THROWS_AS(EmbeddingIndex::from_matrix(m, {"a"}, "bad"), Error);
}

TEST_CASE("score_all hand examples") {
    const EmbeddingIndex basis({"a", "b"}, {1.0f, 0.0f, 0.0f, 1.0f}, 2, "t");
    CHECK(score_all(basis, std::vector<double>{0.5, 2.0}) ==
          std::vector<double>{0.5, 2.0});

    const EmbeddingIndex one({"a"}, {1.0f, 2.0f, 3.0f}, 3, "t");
    CHECK(score_all(one, std::vector<double>{1.0, 1.0, 1.0}) == std::vector<double>{6.0});

    const EmbeddingIndex two({"a", "b"}, {1.0f, 0.0f, 0.6f, 0.8f}, 2, "t");
    const auto scores = score_all(two, std::vector<double>{1.0, 0.0});
    CHECK(scores[0] == doctest::Approx(1.0));
    CHECK(scores[1] == doctest::Approx(0.6));

    CHECK_THROWS_AS(score_all(two, std::vector<double>{1.0}), Error);
}

TEST_CASE("top_k hand examples") {
    const std::vector<double> scores{0.1, 0.9, 0.5};
    const std::vector<std::string> ids{"a", "b", "c"};
    const auto hits = top_k(scores, ids, 2);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].doc_id == "b");
    CHECK(hits[0].score == 0.9);
    CHECK(hits[1].doc_id == "c");

    const std::vector<double> equal{1.0, 1.0, 1.0};
    const std::vector<std::string> shuffled{"b", "a", "c"};
    const auto tied = top_k(equal, shuffled, 3);
    CHECK(tied[0].doc_id == "a");
    CHECK(tied[1].doc_id == "b");
    CHECK(tied[2].doc_id == "c");

    CHECK(top_k(scores, ids, 10).size() == 3);  // k > n clamps
    CHECK_THROWS_AS(top_k(scores, ids, 0), Error);
    CHECK_THROWS_AS(top_k(scores, std::vector<std::string>{"a"}, 1), Error);

    const std::vector<double> bad{std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(top_k(bad, std::vector<std::string>{"a"}, 1), Error);
}

TEST_CASE("top_k equals the full-sort oracle on random and tie-heavy input") {
    std::mt19937_64 gen(404);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 1 + uniform_below(gen, 2000);
        const auto ids = numbered_ids(n);
        std::vector<double> scores(n);
        const bool tie_heavy = round % 3 == 0;
        for (auto& s : scores) {
            // Tie-heavy rounds draw from 4 distinct values only.
            s = tie_heavy ? static_cast<double>(uniform_below(gen, 4))
                          : uniform_unit(gen);
        }
        for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100}}) {
            CHECK(same_hits(top_k(scores, ids, k), full_sort_top_k(scores, ids, k)));
        }
    }
}

TEST_CASE("search composes scoring and selection") {
    const EmbeddingIndex index({"a", "b"}, {1.0f, 0.0f, 0.0f, 1.0f}, 2, "t");
    const auto r = search(index, "q1", std::vector<double>{1.0, 0.2}, 1);
    CHECK(r.query_id == "q1");
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].doc_id == "a");
}

TEST_CASE("search equals brute force on larger random indexes") {
    const auto docs = random_matrix(5000, 24, 17);
    const auto ids = numbered_ids(5000);
    const auto index = EmbeddingIndex::from_matrix(docs, ids, "brute");
    NormalSampler sampler(18);
    std::vector<double> q(24);
    for (auto& v : q) v = sampler.next();

    const auto scores = score_all(index, q);
    for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100}}) {
        const auto r = search(index, "q", q, k);
        CHECK(same_hits(r.hits, full_sort_top_k(scores, ids, k)));
    }
}

TEST_CASE("c=0 rotation leaves rankings unchanged on the 64-bit path") {
    const auto docs = random_matrix(300, 16, 23);
    const auto queries = random_matrix(5, 16, 24);
    const auto ids = numbered_ids(300);
    const auto model = fit_pca(docs, "c0");
    const auto t = prune_model(model, 0.0);
    const auto docs_hat = transform_corpus(docs, t);

    for (std::size_t qi = 0; qi < queries.rows(); ++qi) {
        const auto q_hat = transform_query(queries.row(qi), t);
        const auto full = search(docs, ids, "q", queries.row(qi), 50);
        const auto rotated = search(docs_hat, ids, "q", q_hat, 50);
        REQUIRE(full.hits.size() == rotated.hits.size());
        for (std::size_t i = 0; i < full.hits.size(); ++i) {
            CHECK(full.hits[i].doc_id == rotated.hits[i].doc_id);
        }
    }
}

TEST_CASE("pruned scores equal the explicit projected dot product") {
    const auto docs = random_matrix(100, 10, 29);
    const auto model = fit_pca(docs, "proj");
    const auto t = prune_model(model, 0.5);
    const auto docs_hat = transform_corpus(docs, t);
    NormalSampler sampler(30);
    std::vector<double> q(10);
    for (auto& v : q) v = sampler.next();
    const auto q_hat = transform_query(q, t);

    // Explicit check of q^T W_m W_m^T d per document.
    const auto wmt = t.matrix.transposed();
    for (std::size_t di = 0; di < docs.rows(); ++di) {
        double via_pruned = 0.0;
        for (std::size_t j = 0; j < q_hat.size(); ++j) via_pruned += docs_hat(di, j) * q_hat[j];

        const auto d_proj = matvec(t.matrix, matvec(wmt, docs.row(di)));
        double explicit_score = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) explicit_score += q[j] * d_proj[j];

        CHECK(via_pruned ==
              doctest::Approx(explicit_score).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("search_batch is identical across thread counts") {
    const auto docs = random_matrix(400, 12, 33);
    const auto queries = random_matrix(9, 12, 34);
    const auto doc_ids = numbered_ids(400);
    std::vector<std::string> query_ids;
    for (std::size_t i = 0; i < queries.rows(); ++i) query_ids.push_back("q" + std::to_string(i));

    SUBCASE("32-bit index") {
        const auto index = EmbeddingIndex::from_matrix(docs, doc_ids, "mt");
        const auto reference = search_batch(index, query_ids, queries, 20, 1);
        for (std::size_t threads : {2, 3, 8}) {
            const auto parallel = search_batch(index, query_ids, queries, 20, threads);
            REQUIRE(parallel.size() == reference.size());
            for (std::size_t i = 0; i < reference.size(); ++i) {
                CHECK(parallel[i].query_id == reference[i].query_id);
                CHECK(same_hits(parallel[i].hits, reference[i].hits));
            }
        }
    }
    SUBCASE("64-bit matrix path") {
        const auto reference = search_batch(docs, doc_ids, query_ids, queries, 20, 1);
        for (std::size_t threads : {2, 5}) {
            const auto parallel = search_batch(docs, doc_ids, query_ids, queries, 20, threads);
            for (std::size_t i = 0; i < reference.size(); ++i) {
                CHECK(same_hits(parallel[i].hits, reference[i].hits));
            }
        }
    }
    SUBCASE("id count mismatch") {
        CHECK_THROWS_AS(search_batch(docs, doc_ids, {"only-one"}, queries, 5, 1), Error);
    }
}
