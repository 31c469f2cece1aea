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

#pragma once

/// @file stats.hpp
/// Nonparametric comparison of algorithms on hypervolume scores:
/// Friedman mean ranks, Wilcoxon signed-rank tests against the best-ranked
/// algorithm and Holm step-down correction.

#include <span>
#include <string>
#include <vector>

namespace rapbench::stats {

/// rows: problems or (problem, budget) cells; columns: algorithms.
/// Higher is better.
using ScoreMatrix = std::vector<std::vector<double>>;

/// Mean rank per column; rank 1 is the highest score in a row, ties share
/// the average of their positions. Throws invalid_argument on a ragged or
/// empty matrix or fewer than two columns.
std::vector<double> friedman_ranks(const ScoreMatrix& scores);

struct WilcoxonResult {
    double p_value = 1.0;
    int n_used = 0;         ///< pairs left after dropping zero differences
    bool exact = true;      ///< exact null distribution vs normal approximation
    bool degenerate = false;  ///< every difference was zero
};

/// Two-sided signed-rank test. Zero differences are dropped; tied absolute
/// differences get average ranks. n_used <= 25 uses the exact distribution,
/// larger samples the normal approximation with tie and continuity
/// corrections. Throws invalid_argument on unequal lengths.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

struct HolmResult {
    std::vector<double> adjusted;
    std::vector<bool> reject;
};

/// Step-down adjustment reported in input order. Throws invalid_argument on
/// a p-value outside [0,1].
HolmResult holm_bonferroni(std::span<const double> p_values, double alpha = 0.05);

struct ComparisonEntry {
    std::string algorithm;
    double mean_rank = 0;
    double p_value = 1.0;   ///< raw Wilcoxon p against the best; 1 for the best itself
    double adjusted_p = 1.0;
    bool indistinguishable = true;
    bool degenerate = false;
};

struct ComparisonReport {
    std::string best;
    std::size_t best_index = 0;
    double alpha = 0.05;
    std::vector<ComparisonEntry> entries;  ///< input column order
};

/// `scores` picks the best column (lowest mean Friedman rank, ties to the
/// lower column index). `samples[a]` holds the paired per-run scores of
/// column a; each non-best column is tested against the best and the family
/// is Holm-corrected. A column is indistinguishable from the best when its
/// adjusted p is >= alpha.
ComparisonReport compare_against_best(const ScoreMatrix& scores, const std::vector<std::vector<double>>& samples,
                                      const std::vector<std::string>& names, double alpha = 0.05);

}  // namespace rapbench::stats
