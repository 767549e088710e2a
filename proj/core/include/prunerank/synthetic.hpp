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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prunerank/eval.hpp"
#include "prunerank/matrix.hpp"

namespace prunerank {

/// Parameters of the synthetic retrieval corpus: documents and queries are
/// drawn from a shared rank-r linear factor model (latent component i
/// carries scale signal_decay^i) plus isotropic Gaussian noise. Relevance
/// is planted from noise-free dot products, so ground truth is exact.
struct SynthSpec {
    std::size_t n_docs = 1000;
    std::size_t n_queries = 50;
    std::size_t dim = 64;
    std::size_t intrinsic_rank = 16;
    double signal_decay = 1.0;    // in (0, 1]
    double noise_sigma = 0.0;     // >= 0
    std::uint64_t seed = 0;
    /// Seed of the latent basis stream only. Defaults to `seed`; setting it
    /// while varying `seed` draws fresh corpora from the same latent model,
    /// which is how out-of-domain fitting corpora are produced.
    std::optional<std::uint64_t> basis_seed;
    std::size_t k_relevant = 10;  // judged-relevant docs per query, grade 1
};

struct SynthCorpus {
    DenseMatrix docs;      // n_docs x dim
    std::vector<std::string> doc_ids;
    DenseMatrix queries;   // n_queries x dim
    std::vector<std::string> query_ids;
    Qrels qrels;
};

/// Deterministic generation: one fixed-seed mt19937_64 stream per matrix,
/// so output is byte-identical across platforms and runs.
SynthCorpus generate(const SynthSpec& spec);

}  // namespace prunerank
