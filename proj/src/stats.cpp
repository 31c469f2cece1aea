// Copyright 2026 The rapbench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "rapbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rapbench/error.hpp"

namespace rapbench::stats {

namespace {

constexpr int kExactLimit = 25;

// Average ranks (1-based) of `values` in ascending order.
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::vector<double> friedman_ranks(const ScoreMatrix& scores) {
    if (scores.empty()) fail(ErrorCode::invalid_argument, "Friedman ranks need at least one row");
    const std::size_t k = scores.front().size();
    if (k < 2) fail(ErrorCode::invalid_argument, "Friedman ranks need at least two algorithms");
    std::vector<double> mean(k, 0.0);
    std::vector<double> negated(k);
    for (const auto& row : scores) {
        if (row.size() != k) fail(ErrorCode::invalid_argument, "ragged score matrix");
        // Rank 1 goes to the highest score.
        std::transform(row.begin(), row.end(), negated.begin(), [](double v) { return -v; });
        const auto r = average_ranks(negated);
        for (std::size_t j = 0; j < k; ++j) mean[j] += r[j];
    }
    for (double& m : mean) m /= static_cast<double>(scores.size());
    return mean;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::invalid_argument, "Wilcoxon samples must be paired");
    std::vector<double> magnitude;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d == 0.0) continue;
        magnitude.push_back(std::abs(d));
        positive.push_back(d > 0);
    }
    WilcoxonResult result;
    result.n_used = static_cast<int>(magnitude.size());
    if (magnitude.empty()) {
        result.degenerate = true;
        return result;
    }
    const auto ranks = average_ranks(magnitude);
    const int n = result.n_used;

    if (n <= kExactLimit) {
        // Average ranks are multiples of 1/2; work with doubled integer ranks.
        std::vector<int> doubled(n);
        int total = 0;
        int w_plus = 0;
        for (int i = 0; i < n; ++i) {
            doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
            total += doubled[i];
            if (positive[i]) w_plus += doubled[i];
        }
        std::vector<double> ways(total + 1, 0.0);
        ways[0] = 1.0;
        for (int r : doubled) {
            for (int s = total; s >= r; --s) ways[s] += ways[s - r];
        }
        const double all = std::ldexp(1.0, n);
        double lower = 0, upper = 0;
        for (int s = 0; s <= total; ++s) {
            if (s <= w_plus) lower += ways[s];
            if (s >= w_plus) upper += ways[s];
        }
        result.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
        result.exact = true;
        return result;
    }

    double w_plus = 0;
    for (int i = 0; i < n; ++i) {
        if (positive[i]) w_plus += ranks[i];
    }
    const double nn = n;
    const double mean = nn * (nn + 1) / 4.0;
    double tie_term = 0;
    {
        std::vector<double> sorted = magnitude;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double variance = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
    const double diff = w_plus - mean;
    const double corrected = std::max(0.0, std::abs(diff) - 0.5);
    const double z = variance > 0 ? corrected / std::sqrt(variance) : 0.0;
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    result.exact = false;
    return result;
}

HolmResult holm_bonferroni(std::span<const double> p_values, double alpha) {
    const std::size_t m = p_values.size();
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::invalid_argument, "p-values must lie in [0,1]");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    HolmResult out;
    out.adjusted.assign(m, 1.0);
    out.reject.assign(m, false);
    double running = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double scaled = std::min(1.0, static_cast<double>(m - i) * p_values[order[i]]);
        running = std::max(running, scaled);
        out.adjusted[order[i]] = running;
        out.reject[order[i]] = running < alpha;
    }
    return out;
}

ComparisonReport compare_against_best(const ScoreMatrix& scores, const std::vector<std::vector<double>>& samples,
                                      const std::vector<std::string>& names, double alpha) {
    const auto ranks = friedman_ranks(scores);
    const std::size_t k = ranks.size();
    if (samples.size() != k || names.size() != k) {
        fail(ErrorCode::invalid_argument, "scores, samples and names disagree on the number of algorithms");
    }
    ComparisonReport report;
    report.alpha = alpha;
    report.best_index = static_cast<std::size_t>(std::min_element(ranks.begin(), ranks.end()) - ranks.begin());
    report.best = names[report.best_index];

    std::vector<double> raw;
    std::vector<std::size_t> tested;
    report.entries.resize(k);
    for (std::size_t a = 0; a < k; ++a) {
        auto& e = report.entries[a];
        e.algorithm = names[a];
        e.mean_rank = ranks[a];
        if (a == report.best_index) continue;
        const auto w = wilcoxon_signed_rank(samples[report.best_index], samples[a]);
        e.p_value = w.p_value;
        e.degenerate = w.degenerate;
        raw.push_back(w.p_value);
        tested.push_back(a);
    }
    const auto holm = holm_bonferroni(raw, alpha);
    for (std::size_t i = 0; i < tested.size(); ++i) {
        auto& e = report.entries[tested[i]];
        e.adjusted_p = holm.adjusted[i];
        e.indistinguishable = !holm.reject[i];
    }
    return report;
}

}  // namespace rapbench::stats
