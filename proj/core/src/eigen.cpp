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

#include "prunerank/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace prunerank {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergenceFactor = 1e-12;
constexpr double kNegativeClampFactor = 1e-8;

double offdiag_frobenius(const std::vector<double>& a, std::size_t d) {
    double s = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
            s += a[p * d + q] * a[p * d + q];
        }
    }
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenDecomposition sym_eigendecomposition(const SymmetricMatrix& s) {
    const std::size_t d = s.dim();
    if (d == 0) {
        throw Error("empty input matrix");
    }
    for (double v : s.values()) {
        if (!std::isfinite(v)) throw Error("non-finite input");
    }

    std::vector<double> a = s.values();
    DenseMatrix v = DenseMatrix::identity(d);

    const double frob = s.frobenius_norm();
    const double threshold = kConvergenceFactor * frob;
    const double trace = s.trace();

    bool converged = (d == 1) || offdiag_frobenius(a, d) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (apq == 0.0) continue;
                const double app = a[p * d + p];
                const double aqq = a[q * d + q];
                const double theta = (aqq - app) / (2.0 * apq);
                // Smaller-angle root of t^2 + 2t*theta - 1 = 0.
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                a[p * d + p] = app - t * apq;
                a[q * d + q] = aqq + t * apq;
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
                for (std::size_t r = 0; r < d; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[r * d + p];
                        const double arq = a[r * d + q];
                        a[r * d + p] = arp - sn * (arq + tau * arp);
                        a[p * d + r] = a[r * d + p];
                        a[r * d + q] = arq + sn * (arp - tau * arq);
                        a[q * d + r] = a[r * d + q];
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - sn * (vrq + tau * vrp);
                    v(r, q) = vrq + sn * (vrp - tau * vrq);
                }
            }
        }
        converged = offdiag_frobenius(a, d) <= threshold;
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "eigensolver did not converge after " << kMaxSweeps
            << " sweeps; off-diagonal residual " << offdiag_frobenius(a, d);
        throw Error(msg.str());
    }

    std::vector<double> eigenvalues(d);
    for (std::size_t i = 0; i < d; ++i) eigenvalues[i] = a[i * d + i];

    // Order by descending eigenvalue, keeping the solver's output order for
    // exact ties.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return eigenvalues[x] > eigenvalues[y];
    });

    // Round-off band below zero, meaningful for PSD inputs only.
    const double clamp_floor = -kNegativeClampFactor * std::max(0.0, trace);

    EigenDecomposition result;
    result.eigenvalues.resize(d);
    result.eigenvectors = DenseMatrix(d, d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t src = order[col];
        double lambda = eigenvalues[src];
        if (lambda < 0.0 && lambda >= clamp_floor) lambda = 0.0;
        result.eigenvalues[col] = lambda;

        // Sign convention: largest-magnitude component positive, ties broken
        // by lowest index.
        std::size_t pivot = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < d; ++r) {
            const double mag = std::abs(v(r, src));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < d; ++r) {
            result.eigenvectors(r, col) = sign * v(r, src);
        }
    }
    return result;
}

}  // namespace prunerank
