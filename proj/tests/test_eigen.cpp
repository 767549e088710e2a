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

#include <cmath>
#include <cstdint>
#include <vector>

#include "prunerank/eigen.hpp"
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

SymmetricMatrix random_symmetric(std::size_t dim, std::uint64_t seed) {
    return SymmetricMatrix(random_matrix(dim, dim, seed));
}

// A^T A is PSD by construction.
SymmetricMatrix random_psd(std::size_t dim, std::size_t rank_rows, std::uint64_t seed) {
    const auto a = random_matrix(rank_rows, dim, seed);
    const auto g = project(a.transposed(), a);
    return SymmetricMatrix(g);
}

double orthonormality_defect(const DenseMatrix& w) {
    const auto wtw = project(w.transposed(), w);
    double s = 0.0;
    for (std::size_t i = 0; i < w.cols(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            const double diff = wtw(i, j) - target;
            s += diff * diff;
        }
    }
    return std::sqrt(s);
}

double residual_norm(const SymmetricMatrix& s, const EigenDecomposition& e) {
    const std::size_t d = s.dim();
    double acc = 0.0;
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t r = 0; r < d; ++r) {
            double sv = 0.0;
            for (std::size_t k = 0; k < d; ++k) sv += s(r, k) * e.eigenvectors(k, col);
            const double diff = sv - e.eigenvalues[col] * e.eigenvectors(r, col);
            acc += diff * diff;
        }
    }
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("diagonal matrix: sorted eigenvalues, axis eigenvectors") {
    const SymmetricMatrix s(DenseMatrix::from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
    const auto e = sym_eigendecomposition(s);
    CHECK(e.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
    // Columns are the matching axes, signs positive.
    CHECK(e.eigenvectors(0, 0) == 1.0);
    CHECK(e.eigenvectors(2, 1) == 1.0);
    CHECK(e.eigenvectors(1, 2) == 1.0);
}

TEST_CASE("2x2 hand-solvable case") {
    const SymmetricMatrix s(DenseMatrix::from_rows({{2, 1}, {1, 2}}));
    const auto e = sym_eigendecomposition(s);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2));
    CHECK(e.eigenvectors(1, 0) == doctest::Approx(inv_sqrt2));
    // Equal-magnitude components: the sign convention makes index 0 positive.
    CHECK(e.eigenvectors(0, 1) == doctest::Approx(inv_sqrt2));
    CHECK(e.eigenvectors(1, 1) == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("identity and zero matrices") {
    const auto eye = sym_eigendecomposition(SymmetricMatrix(DenseMatrix::identity(4)));
    for (double v : eye.eigenvalues) CHECK(v == 1.0);
    CHECK(eye.eigenvectors.values() == DenseMatrix::identity(4).values());

    const auto zero = sym_eigendecomposition(SymmetricMatrix(DenseMatrix(3, 3)));
    for (double v : zero.eigenvalues) CHECK(v == 0.0);
}

TEST_CASE("1x1 matrix") {
    const auto e = sym_eigendecomposition(SymmetricMatrix(DenseMatrix::from_rows({{-2.5}})));
    CHECK(e.eigenvalues[0] == -2.5);  // genuinely negative, never clamped
    CHECK(e.eigenvectors(0, 0) == 1.0);
}

TEST_CASE("orthonormality and residual on random PSD matrices") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t d = 2 + seed % 40;
        const auto s = random_psd(d, d + 5, 100 + seed);
        const auto e = sym_eigendecomposition(s);

        CHECK(orthonormality_defect(e.eigenvectors) <= 1e-9 * static_cast<double>(d));
        CHECK(residual_norm(s, e) <= 1e-8 * std::max(1.0, s.trace()));
        for (std::size_t i = 0; i + 1 < d; ++i) {
            CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
        }
        for (double v : e.eigenvalues) CHECK(v >= 0.0);  // PSD spectrum, clamped band
    }
}

TEST_CASE("indefinite matrices keep genuinely negative eigenvalues") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t d = 3 + seed % 20;
        const auto s = random_symmetric(d, 500 + seed);
        const auto e = sym_eigendecomposition(s);

        // Reconstruction S == W diag(lambda) W^T.
        double defect = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    acc += e.eigenvectors(i, k) * e.eigenvalues[k] * e.eigenvectors(j, k);
                }
                defect += (acc - s(i, j)) * (acc - s(i, j));
                scale += s(i, j) * s(i, j);
            }
        }
        CHECK(std::sqrt(defect) <= 1e-9 * std::max(1.0, std::sqrt(scale)));

        // A d >= 3 gaussian symmetric matrix has a negative eigenvalue with
        // overwhelming probability; the clamp must not erase it.
        CHECK(e.eigenvalues.back() < 0.0);
    }
}

TEST_CASE("rank-deficient Gram spectra are clamped to zero, not left negative") {
    // 2 rows of dimension 6: at most rank 2, so 4 eigenvalues are zero up
    // to round-off. The clamp removes the negative half of that round-off
    // band; the positive half stays tiny.
    const auto s = random_psd(6, 2, 77);
    const auto e = sym_eigendecomposition(s);
    for (double v : e.eigenvalues) CHECK(v >= 0.0);
    for (std::size_t i = 2; i < 6; ++i) {
        CHECK(e.eigenvalues[i] <= 1e-10 * s.trace());
    }
}

TEST_CASE("eigendecomposition rejects bad input") {
    CHECK_THROWS_AS(sym_eigendecomposition(SymmetricMatrix(0, {})), Error);
    std::vector<double> values = {1.0, 2.0, 2.0, std::nan("")};
    CHECK_THROWS_WITH_AS(sym_eigendecomposition(SymmetricMatrix(2, values)),
                         "non-finite input", Error);
}
