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
#include <initializer_list>
#include <span>
#include <vector>

#include "prunerank/error.hpp"

namespace prunerank {

/// Row-major dense matrix of 64-bit floats. All internal computation runs
/// at this precision; 32-bit storage only appears at the index/file layer.
/// Immutable use after construction is thread-safe.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t n_rows, std::size_t n_cols)
        : n_rows_(n_rows), n_cols_(n_cols), values_(n_rows * n_cols, 0.0) {}
    DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> values);

    /// Builds from nested braces, e.g. {{1, 2}, {3, 4}}. Ragged rows throw.
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix identity(std::size_t dim);

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return n_cols_; }
    bool empty() const { return n_rows_ == 0 || n_cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * n_cols_, n_cols_};
    }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    const std::vector<double>& values() const { return values_; }

    bool all_finite() const;
    DenseMatrix transposed() const;

    /// Column j as a vector (used for extracting eigenvectors).
    std::vector<double> column(std::size_t j) const;

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<double> values_;
};

/// Symmetric d x d matrix. Construction symmetrizes the input as
/// (A + A^T) / 2 so that (i, j) == (j, i) holds exactly.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(const DenseMatrix& square);
    SymmetricMatrix(std::size_t dim, std::vector<double> values);

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * dim_ + j]; }
    const std::vector<double>& values() const { return values_; }

    double trace() const;
    double frobenius_norm() const;

private:
    void symmetrize();

    std::size_t dim_ = 0;
    std::vector<double> values_;
};

/// Uncentered Gram matrix D^T D. No mean subtraction is performed; the
/// decomposition of this matrix preserves dot-product scores exactly when
/// no dimension is pruned.
SymmetricMatrix gram_matrix(const DenseMatrix& d);

/// Matrix product A * B with a fixed per-element summation order (ascending
/// inner index), so results are bit-identical across runs and thread counts.
/// `n_threads` > 1 splits work across output rows.
DenseMatrix project(const DenseMatrix& a, const DenseMatrix& b, std::size_t n_threads = 1);

/// A * v for a length-cols() vector, same accumulation order as project().
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v);

}  // namespace prunerank
