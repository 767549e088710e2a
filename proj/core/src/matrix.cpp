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

#include "prunerank/matrix.hpp"

#include <cmath>
#include <string>
#include <thread>

namespace prunerank {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> values)
    : n_rows_(n_rows), n_cols_(n_cols), values_(std::move(values)) {
    if (values_.size() != n_rows_ * n_cols_) {
        throw Error("matrix value count " + std::to_string(values_.size()) +
                    " does not match shape " + shape_str(n_rows_, n_cols_));
    }
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    DenseMatrix m(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != m.n_cols_) {
            throw Error("ragged row " + std::to_string(i) + " in matrix literal");
        }
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(n_cols_, n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t j = 0; j < n_cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> col(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) col[i] = (*this)(i, j);
    return col;
}

SymmetricMatrix::SymmetricMatrix(const DenseMatrix& square)
    : dim_(square.rows()), values_(square.values()) {
    if (square.rows() != square.cols()) {
        throw Error("symmetric matrix requires a square input, got " +
                    shape_str(square.rows(), square.cols()));
    }
    symmetrize();
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
    if (values_.size() != dim_ * dim_) {
        throw Error("symmetric matrix value count " + std::to_string(values_.size()) +
                    " does not match dim " + std::to_string(dim_));
    }
    symmetrize();
}

void SymmetricMatrix::symmetrize() {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            double v = 0.5 * (values_[i * dim_ + j] + values_[j * dim_ + i]);
            values_[i * dim_ + j] = v;
            values_[j * dim_ + i] = v;
        }
    }
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += values_[i * dim_ + i];
    return t;
}

double SymmetricMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

SymmetricMatrix gram_matrix(const DenseMatrix& d) {
    if (d.rows() == 0 || d.cols() == 0) {
        throw Error("empty input matrix");
    }
    if (!d.all_finite()) {
        throw Error("non-finite input");
    }
    const std::size_t n = d.rows();
    const std::size_t dim = d.cols();
    std::vector<double> g(dim * dim, 0.0);
    // Accumulate the upper triangle row by row, then mirror. Summation runs
    // over rows in ascending order for every entry.
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = d.data() + i * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            const double dj = row[j];
            for (std::size_t k = j; k < dim; ++k) {
                g[j * dim + k] += dj * row[k];
            }
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j + 1; k < dim; ++k) {
            g[k * dim + j] = g[j * dim + k];
        }
    }
    return SymmetricMatrix(dim, std::move(g));
}

namespace {

void product_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out,
                  std::size_t row_begin, std::size_t row_end) {
    const std::size_t inner = a.cols();
    const std::size_t n_cols = b.cols();
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double* arow = a.data() + i * inner;
        double* orow = out.data() + i * n_cols;
        // i-k-j loop order: for every output element the additions still
        // happen in ascending k, identical to the naive i-j-k order.
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = arow[k];
            const double* brow = b.data() + k * n_cols;
            for (std::size_t j = 0; j < n_cols; ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
}

}  // namespace

DenseMatrix project(const DenseMatrix& a, const DenseMatrix& b, std::size_t n_threads) {
    if (a.cols() != b.rows()) {
        throw Error("dimension mismatch: cannot multiply " + shape_str(a.rows(), a.cols()) +
                    " by " + shape_str(b.rows(), b.cols()));
    }
    DenseMatrix out(a.rows(), b.cols());
    if (n_threads <= 1 || a.rows() < 2 * n_threads) {
        product_rows(a, b, out, 0, a.rows());
        return out;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (a.rows() + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(a.rows(), begin + chunk);
        if (begin >= end) break;
        workers.emplace_back(product_rows, std::cref(a), std::cref(b), std::ref(out), begin, end);
    }
    for (auto& w : workers) w.join();
    return out;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v) {
    if (a.cols() != v.size()) {
        throw Error("dimension mismatch: cannot multiply " + shape_str(a.rows(), a.cols()) +
                    " by vector of length " + std::to_string(v.size()));
    }
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.data() + i * a.cols();
        double acc = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += row[k] * v[k];
        out[i] = acc;
    }
    return out;
}

}  // namespace prunerank
