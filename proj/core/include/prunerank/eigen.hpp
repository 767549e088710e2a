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

#include <vector>

#include "prunerank/matrix.hpp"

namespace prunerank {

/// Full eigendecomposition S = W diag(eigenvalues) W^T of a symmetric
/// matrix. Eigenvalues are sorted non-increasing; column i of eigenvectors
/// is the unit eigenvector for eigenvalues[i].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;  // d x d, orthonormal columns
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Deterministic by construction: rotations sweep the upper triangle in a
/// fixed row-major order, equal eigenvalues keep the solver's output order
/// (stable sort), and each eigenvector is flipped so its largest-magnitude
/// component is positive (ties broken by lowest index). Negative
/// eigenvalues within round-off of zero (relative to the trace) are clamped
/// to 0; genuinely negative eigenvalues pass through unchanged.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-12 * ||S||_F; throws after 100 sweeps otherwise.
EigenDecomposition sym_eigendecomposition(const SymmetricMatrix& s);

}  // namespace prunerank
