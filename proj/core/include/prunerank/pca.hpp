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
#include <span>
#include <string>
#include <vector>

#include "prunerank/eigen.hpp"
#include "prunerank/matrix.hpp"

namespace prunerank {

/// PCA model fitted on (a sample of) document embeddings: the full
/// orthonormal basis of the uncentered Gram matrix with its eigenvalue
/// spectrum. Immutable after construction.
struct PcaModel {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;  // descending, all >= 0
    DenseMatrix basis;                // d x d, column i = principal direction i
    std::uint64_t fitted_on = 0;      // rows used for the fit
    std::string source_tag;           // identifies the fitting corpus

    double total_variance() const;
};

/// The first m basis columns plus cutoff metadata. Applying it to a corpus
/// or query drops the d - m least important dimensions.
struct PrunedTransform {
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;  // m, in [1, dim_in]
    DenseMatrix matrix;       // d x m
    double cutoff = 0.0;      // fraction of dimensions removed
    double retained_variance = 1.0;
};

/// Selects `count` distinct rows uniformly without replacement. The chosen
/// rows keep their original relative order. Deterministic for a given seed.
DenseMatrix sample_rows(const DenseMatrix& d, std::size_t count, std::uint64_t seed);

/// Fits the PCA model: eigendecomposition of the uncentered Gram matrix of
/// the sample. With `center` set, column means are subtracted before the
/// Gram computation; this deviates from the uncentered formulation and
/// loses the exact score-preservation property at m = d.
PcaModel fit_pca(const DenseMatrix& sample, const std::string& source_tag, bool center = false);

/// Number of dimensions kept at cutoff c: m = d - round(c*d), rounding half
/// away from zero, clamped to [1, d]. Requires 0 <= c < 1.
std::size_t cutoff_to_m(double cutoff, std::size_t dim);

PrunedTransform prune_model(const PcaModel& model, double cutoff);

/// D * W_m, shape n x m. Works on any corpus with matching input dimension,
/// including one the model was not fitted on.
DenseMatrix transform_corpus(const DenseMatrix& d, const PrunedTransform& t,
                             std::size_t n_threads = 1);

/// W_m^T q, length m.
std::vector<double> transform_query(std::span<const double> q, const PrunedTransform& t);

/// Squared Frobenius norm of D - (D W_m) W_m^T. When the model was fitted
/// on all of D this equals the sum of the discarded eigenvalues.
double reconstruction_error(const DenseMatrix& d, const PrunedTransform& t);

}  // namespace prunerank
