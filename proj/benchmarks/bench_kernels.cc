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
//
// Microbenchmarks for the hot kernels: Gram accumulation, the Jacobi
// eigensolver, scoring, top-k selection, and the corpus transform. Run
// with --benchmark_filter=... to focus on one.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prunerank/eigen.hpp"
#include "prunerank/index.hpp"
#include "prunerank/matrix.hpp"
#include "prunerank/pca.hpp"

namespace {

using namespace prunerank;

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    }
    return m;
}

std::vector<std::string> numbered_ids(std::size_t count) {
    std::vector<std::string> ids(count);
    for (std::size_t i = 0; i < count; ++i) ids[i] = "D" + std::to_string(i);
    return ids;
}

void BM_GramMatrix(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const DenseMatrix docs = random_matrix(n, d, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_matrix(docs));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * d * d));
}
BENCHMARK(BM_GramMatrix)->Args({1000, 64})->Args({1000, 128})->Args({4000, 128});

void BM_JacobiEigen(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const SymmetricMatrix s = gram_matrix(random_matrix(2 * d, d, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_eigendecomposition(s));
    }
}
BENCHMARK(BM_JacobiEigen)->Arg(32)->Arg(64)->Arg(128);

void BM_ScoreAll(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const EmbeddingIndex index =
        EmbeddingIndex::from_matrix(random_matrix(n, d, 3), numbered_ids(n), "bench");
    const DenseMatrix queries = random_matrix(1, d, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(score_all(index, queries.row(0)));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * d));
}
BENCHMARK(BM_ScoreAll)->Args({100000, 768})->Args({100000, 384})->Args({100000, 192});

void BM_TopK(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    std::vector<double> scores(n);
    for (auto& s : scores) s = gauss(rng);
    const auto ids = numbered_ids(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(top_k(scores, ids, k));
    }
}
BENCHMARK(BM_TopK)->Args({100000, 10})->Args({100000, 1000});

void BM_TransformCorpus(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const double cutoff = static_cast<double>(state.range(2)) / 100.0;
    const DenseMatrix docs = random_matrix(n, d, 6);
    const PcaModel model = fit_pca(sample_rows(docs, std::min<std::size_t>(n, 1000), 7), "bench");
    const PrunedTransform t = prune_model(model, cutoff);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transform_corpus(docs, t));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * d * t.dim_out));
}
BENCHMARK(BM_TransformCorpus)->Args({10000, 128, 0})->Args({10000, 128, 50});

}  // namespace

BENCHMARK_MAIN();
