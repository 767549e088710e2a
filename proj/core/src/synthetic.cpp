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

#include "prunerank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "prunerank/error.hpp"
#include "prunerank/rng.hpp"

namespace prunerank {

namespace {

// Fixed sub-stream ids; changing these changes every generated corpus.
enum Stream : std::uint64_t {
    kBasisStream = 0,
    kDocFactorStream = 1,
    kDocNoiseStream = 2,
    kQueryFactorStream = 3,
    kQueryNoiseStream = 4,
};

void validate(const SynthSpec& spec) {
    if (spec.intrinsic_rank > spec.dim) {
        throw Error("intrinsic rank " + std::to_string(spec.intrinsic_rank) +
                    " exceeds dimension " + std::to_string(spec.dim));
    }
    if (spec.n_docs == 0 || spec.n_queries == 0 || spec.dim == 0 ||
        spec.intrinsic_rank == 0 || spec.k_relevant == 0) {
        throw Error("all corpus counts must be at least 1");
    }
    if (!(spec.signal_decay > 0.0) || spec.signal_decay > 1.0) {
        throw Error("signal decay must be in (0, 1]");
    }
    if (!(spec.noise_sigma >= 0.0)) {
        throw Error("noise sigma must be non-negative");
    }
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                            double scale) {
    NormalSampler sampler(seed);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = sampler.next() * scale;
        }
    }
    return m;
}

// Latent factors with column i scaled by decay^i.
DenseMatrix factor_matrix(std::size_t rows, std::size_t rank, double decay,
                          std::uint64_t seed) {
    std::vector<double> scales(rank);
    double s = 1.0;
    for (std::size_t i = 0; i < rank; ++i) {
        scales[i] = s;
        s *= decay;
    }
    NormalSampler sampler(seed);
    DenseMatrix z(rows, rank);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            z(i, j) = sampler.next() * scales[j];
        }
    }
    return z;
}

void add_noise(DenseMatrix* m, double sigma, std::uint64_t seed) {
    if (sigma == 0.0) {
        return;
    }
    NormalSampler sampler(seed);
    double* values = m->data();
    const std::size_t total = m->rows() * m->cols();
    for (std::size_t i = 0; i < total; ++i) {
        values[i] += sigma * sampler.next();
    }
}

std::vector<std::string> make_ids(char prefix, std::size_t count) {
    std::vector<std::string> ids(count);
    char buf[24];
    for (std::size_t i = 0; i < count; ++i) {
        std::snprintf(buf, sizeof(buf), "%c%06zu", prefix, i);
        ids[i] = buf;
    }
    return ids;
}

// Ground truth: the k docs with the highest noise-free score for the query,
// ties broken by document index (equivalently id order).
Qrels plant_relevance(const DenseMatrix& doc_signal, const DenseMatrix& query_signal,
                      const std::vector<std::string>& doc_ids,
                      const std::vector<std::string>& query_ids, std::size_t k_relevant) {
    const std::size_t n_docs = doc_signal.rows();
    const std::size_t k = std::min(k_relevant, n_docs);
    Qrels qrels;
    std::vector<double> scores(n_docs);
    std::vector<std::size_t> order(n_docs);
    for (std::size_t qi = 0; qi < query_signal.rows(); ++qi) {
        const auto q = query_signal.row(qi);
        for (std::size_t di = 0; di < n_docs; ++di) {
            const auto d = doc_signal.row(di);
            double acc = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) {
                acc += d[j] * q[j];
            }
            scores[di] = acc;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         order.end(), [&](std::size_t a, std::size_t b) {
                             if (scores[a] != scores[b]) return scores[a] > scores[b];
                             return a < b;
                         });
        auto& per_query = qrels.judgments[query_ids[qi]];
        for (std::size_t i = 0; i < k; ++i) {
            per_query.emplace(doc_ids[order[i]], 1);
        }
    }
    return qrels;
}

}  // namespace

SynthCorpus generate(const SynthSpec& spec) {
    validate(spec);
    const std::uint64_t basis_root = spec.basis_seed.value_or(spec.seed);

    // Latent basis rows are near-unit-norm: entries N(0, 1/d).
    const DenseMatrix basis =
        gaussian_matrix(spec.intrinsic_rank, spec.dim,
                        derive_stream_seed(basis_root, kBasisStream),
                        1.0 / std::sqrt(static_cast<double>(spec.dim)));

    const DenseMatrix doc_factors =
        factor_matrix(spec.n_docs, spec.intrinsic_rank, spec.signal_decay,
                      derive_stream_seed(spec.seed, kDocFactorStream));
    const DenseMatrix query_factors =
        factor_matrix(spec.n_queries, spec.intrinsic_rank, spec.signal_decay,
                      derive_stream_seed(spec.seed, kQueryFactorStream));

    const DenseMatrix doc_signal = project(doc_factors, basis);
    const DenseMatrix query_signal = project(query_factors, basis);

    SynthCorpus corpus;
    corpus.doc_ids = make_ids('D', spec.n_docs);
    corpus.query_ids = make_ids('Q', spec.n_queries);
    corpus.qrels = plant_relevance(doc_signal, query_signal, corpus.doc_ids,
                                   corpus.query_ids, spec.k_relevant);

    corpus.docs = doc_signal;
    add_noise(&corpus.docs, spec.noise_sigma, derive_stream_seed(spec.seed, kDocNoiseStream));
    corpus.queries = query_signal;
    add_noise(&corpus.queries, spec.noise_sigma,
              derive_stream_seed(spec.seed, kQueryNoiseStream));
    return corpus;
}

}  // namespace prunerank
