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

#include "prunerank/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "prunerank/error.hpp"

namespace prunerank {

namespace {

constexpr std::size_t kExactLimit = 25;

// Doubled average ranks of |d| (doubling keeps .5 ranks integral) plus the
// tie-group sizes needed by the variance correction.
struct RankedDiffs {
    std::vector<std::uint64_t> doubled_ranks;  // aligned with diffs
    std::vector<std::size_t> tie_groups;
};

RankedDiffs rank_absolute(const std::vector<double>& diffs) {
    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });

    RankedDiffs out;
    out.doubled_ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
        // Positions i..j (0-based) share the average rank (i+1 + j+1)/2.
        const std::uint64_t doubled = static_cast<std::uint64_t>(i) + j + 2;
        for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[order[k]] = doubled;
        out.tie_groups.push_back(j - i + 1);
        i = j + 1;
    }
    return out;
}

// Exact two-tailed p over all sign assignments: the count of signed-rank
// sums at least as extreme as the observed minimum, via the subset-sum
// distribution of the rank multiset.
double exact_p(const std::vector<std::uint64_t>& doubled_ranks, std::uint64_t w2_min) {
    const std::size_t n = doubled_ranks.size();
    const std::uint64_t total =
        std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), std::uint64_t{0});

    std::vector<std::uint64_t> counts(total + 1, 0);
    counts[0] = 1;
    std::uint64_t reachable = 0;
    for (const std::uint64_t r : doubled_ranks) {
        reachable += r;
        for (std::uint64_t s = reachable + 1; s-- > r;) {
            counts[s] += counts[s - r];
        }
    }

    std::uint64_t extreme = 0;
    for (std::uint64_t s = 0; s <= total; ++s) {
        if (s <= w2_min || s >= total - w2_min) extreme += counts[s];
    }
    const double p = static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
    return std::min(p, 1.0);
}

double approx_p(double w_plus, std::size_t n, const std::vector<std::size_t>& tie_groups) {
    const double dn = static_cast<double>(n);
    const double mean = dn * (dn + 1.0) / 4.0;
    double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    for (const std::size_t t : tie_groups) {
        const double dt = static_cast<double>(t);
        variance -= dt * (dt * dt - 1.0) / 48.0;
    }
    const double se = std::sqrt(variance);
    // Continuity correction of 0.5 toward the mean.
    double centered = w_plus - mean;
    if (centered > 0.0) {
        centered -= 0.5;
    } else if (centered < 0.0) {
        centered += 0.5;
    }
    const double z = centered / se;
    const double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    return std::min(1.0, std::max(p, std::numeric_limits<double>::denorm_min()));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error("paired test requires equal lengths, got " + std::to_string(x.size()) +
                    " and " + std::to_string(y.size()));
    }
    if (x.empty()) {
        throw Error("paired test requires at least one pair");
    }

    std::vector<double> diffs;
    diffs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }

    WilcoxonResult result;
    result.n_effective = diffs.size();
    if (diffs.empty()) {
        return result;  // degenerate: p = 1, not significant
    }

    const RankedDiffs ranked = rank_absolute(diffs);
    std::uint64_t w2_plus = 0;
    std::uint64_t w2_total = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        w2_total += ranked.doubled_ranks[i];
        if (diffs[i] > 0.0) w2_plus += ranked.doubled_ranks[i];
    }
    const std::uint64_t w2_minus = w2_total - w2_plus;
    const std::uint64_t w2_min = std::min(w2_plus, w2_minus);
    result.statistic = static_cast<double>(w2_min) / 2.0;

    if (diffs.size() <= kExactLimit) {
        result.p_two_tailed = exact_p(ranked.doubled_ranks, w2_min);
    } else {
        result.p_two_tailed =
            approx_p(static_cast<double>(w2_plus) / 2.0, diffs.size(), ranked.tie_groups);
    }
    result.significant_at_05 = result.p_two_tailed < 0.05;
    return result;
}

}  // namespace prunerank
