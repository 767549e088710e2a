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

#include "prunerank/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prunerank/rng.hpp"

namespace prunerank {

double PcaModel::total_variance() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
}

DenseMatrix sample_rows(const DenseMatrix& d, std::size_t count, std::uint64_t seed) {
    const std::size_t n = d.rows();
    if (count < 1 || count > n) {
        throw Error("sample count " + std::to_string(count) + " out of range [1, " +
                    std::to_string(n) + "]");
    }
    // Partial Fisher-Yates over the index array, then restore original order.
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + uniform_below(gen, n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(count);
    std::sort(indices.begin(), indices.end());

    DenseMatrix out(count, d.cols());
    for (std::size_t i = 0; i < count; ++i) {
        const auto src = d.row(indices[i]);
        std::copy(src.begin(), src.end(), out.data() + i * d.cols());
    }
    return out;
}

PcaModel fit_pca(const DenseMatrix& sample, const std::string& source_tag, bool center) {
    if (sample.rows() == 0 || sample.cols() == 0) {
        throw Error("empty input matrix");
    }
    EigenDecomposition eig;
    if (center) {
        DenseMatrix centered = sample;
        const std::size_t n = sample.rows();
        const std::size_t dim = sample.cols();
        for (std::size_t j = 0; j < dim; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += sample(i, j);
            mean /= static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) centered(i, j) -= mean;
        }
        eig = sym_eigendecomposition(gram_matrix(centered));
    } else {
        eig = sym_eigendecomposition(gram_matrix(sample));
    }

    PcaModel model;
    model.dim = sample.cols();
    model.eigenvalues = std::move(eig.eigenvalues);
    for (double& v : model.eigenvalues) v = std::max(v, 0.0);
    model.basis = std::move(eig.eigenvectors);
    model.fitted_on = sample.rows();
    model.source_tag = source_tag;
    return model;
}

std::size_t cutoff_to_m(double cutoff, std::size_t dim) {
    if (!(cutoff >= 0.0 && cutoff < 1.0)) {
        throw Error("cutoff must be in [0, 1), got " + std::to_string(cutoff));
    }
    if (dim < 1) {
        throw Error("dimension must be >= 1");
    }
    const auto removed = static_cast<std::size_t>(std::llround(cutoff * static_cast<double>(dim)));
    const std::size_t m = removed >= dim ? 1 : dim - removed;
    return std::max<std::size_t>(1, std::min(m, dim));
}

PrunedTransform prune_model(const PcaModel& model, double cutoff) {
    const std::size_t m = cutoff_to_m(cutoff, model.dim);

    PrunedTransform t;
    t.dim_in = model.dim;
    t.dim_out = m;
    t.cutoff = cutoff;
    t.matrix = DenseMatrix(model.dim, m);
    for (std::size_t i = 0; i < model.dim; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            t.matrix(i, j) = model.basis(i, j);
        }
    }

    const double total = model.total_variance();
    if (total > 0.0) {
        double kept = 0.0;
        for (std::size_t j = 0; j < m; ++j) kept += model.eigenvalues[j];
        t.retained_variance = std::min(1.0, kept / total);
    } else {
        t.retained_variance = 1.0;  // zero spectrum: nothing to lose
    }
    return t;
}

DenseMatrix transform_corpus(const DenseMatrix& d, const PrunedTransform& t,
                             std::size_t n_threads) {
    if (d.cols() != t.dim_in) {
        throw Error("dimension mismatch: corpus has " + std::to_string(d.cols()) +
                    " columns, transform expects " + std::to_string(t.dim_in));
    }
    return project(d, t.matrix, n_threads);
}

std::vector<double> transform_query(std::span<const double> q, const PrunedTransform& t) {
    if (q.size() != t.dim_in) {
        throw Error("dimension mismatch: query has length " + std::to_string(q.size()) +
                    ", transform expects " + std::to_string(t.dim_in));
    }
    std::vector<double> out(t.dim_out, 0.0);
    // out = W_m^T q; accumulation over k ascending for each output element.
    for (std::size_t j = 0; j < t.dim_out; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t.dim_in; ++k) {
            acc += t.matrix(k, j) * q[k];
        }
        out[j] = acc;
    }
    return out;
}

double reconstruction_error(const DenseMatrix& d, const PrunedTransform& t) {
    if (d.cols() != t.dim_in) {
        throw Error("dimension mismatch: corpus has " + std::to_string(d.cols()) +
                    " columns, transform expects " + std::to_string(t.dim_in));
    }
    const DenseMatrix projected = project(d, t.matrix);
    const DenseMatrix restored = project(projected, t.matrix.transposed());
    double err = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            const double diff = d(i, j) - restored(i, j);
            err += diff * diff;
        }
    }
    return err;
}

}  // namespace prunerank
