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
#include <span>

namespace prunerank {

struct WilcoxonResult {
    std::size_t n_effective = 0;  // pairs remaining after zero removal
    double statistic = 0.0;       // W = min(W+, W-)
    double p_two_tailed = 1.0;
    bool significant_at_05 = false;
};

/// Two-tailed paired Wilcoxon signed-rank test.
///
/// Zero differences are discarded; absolute differences are ranked with
/// average ranks for ties. For n_effective <= 25 the p-value is exact,
/// computed from the distribution of the signed-rank sum over all 2^n sign
/// assignments of the realized rank multiset; above that a normal
/// approximation with tie correction and continuity correction is used.
/// All differences zero yields n_effective = 0, p = 1, not significant.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

}  // namespace prunerank
