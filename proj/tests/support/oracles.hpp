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

// Independent reference computations used by the unit and acceptance
// tests. Nothing here calls into the library's CTMC, hypervolume or
// filtering code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Steady-state availability of n identical units with per-unit failure
// rate lambda and per-unit repair rate mu, where the system is up while at
// most n - k units are failed and no further failures happen once it is
// down.
inline double birth_death_availability(int n, int k, double lambda, double mu) {
    const int down = n - k + 1;
    std::vector<double> weight(down + 1);
    weight[0] = 1.0;
    for (int j = 0; j < down; ++j) {
        weight[j + 1] = weight[j] * (n - j) * lambda / ((j + 1) * mu);
    }
    double total = 0;
    for (double w : weight) total += w;
    return 1.0 - weight[down] / total;
}

struct Rates {
    int k;
    double lambda_working, lambda_standby, sigma_cold, sigma_warm, mu;
};

enum class Policy { cold, warm, mixed, hot };

struct SimulationResult {
    double availability;
    double standard_error;  // batch-means estimate
};

// Event-driven simulation of one subsystem. The component pool is tracked
// as counts of active, standby and failed units; the system is up while at
// least k units are active. Rules:
//  - every active unit fails at lambda_working; when only k-1 remain active
//    the subsystem is down and nothing else fails
//  - warm and mixed standby units fail at lambda_standby while up
//  - standby units are switched in while fewer than `target` are active,
//    up to two at a time (two concurrent activations when the shortfall
//    and the pool allow it), each activation completing one unit
//  - every failed unit is repaired independently at mu and rejoins the
//    standby pool
// Hot standby keeps every working unit active and switches instantly.
inline SimulationResult simulate(const Rates& r, Policy policy, int n, double horizon, std::uint64_t seed,
                                 int batches = 50) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int target = policy == Policy::mixed ? r.k + 1 : r.k;
    const double sigma = policy == Policy::cold ? r.sigma_cold : r.sigma_warm;

    int active = std::min(n, policy == Policy::hot ? n : target);
    int standby = n - active;
    int failed = 0;

    const double batch_len = horizon / batches;
    std::vector<double> up_time(batches, 0.0);
    double t = 0;

    auto credit = [&](double from, double to, bool up) {
        if (!up) return;
        while (from < to) {
            const int b = std::min(batches - 1, static_cast<int>(from / batch_len));
            const double end = std::min(to, (b + 1) * batch_len);
            up_time[b] += end - from;
            from = end;
        }
    };

    while (t < horizon) {
        const bool up = active >= r.k;
        double rates[4] = {0, 0, 0, 0};  // active failure, standby failure, activation, repair
        if (up) rates[0] = active * r.lambda_working;
        if (up && (policy == Policy::warm || policy == Policy::mixed)) rates[1] = standby * r.lambda_standby;
        if (policy != Policy::hot && active < target && standby > 0) {
            rates[2] = std::min({standby, 2, r.k + 1 - active}) * sigma;
        }
        rates[3] = failed * r.mu;
        const double total = rates[0] + rates[1] + rates[2] + rates[3];
        const double dt = -std::log(1.0 - unit(gen)) / total;
        const double next = std::min(horizon, t + dt);
        credit(t, next, up);
        t = next;
        if (t >= horizon) break;

        double pick = unit(gen) * total;
        int event = 0;
        while (event < 3 && pick >= rates[event]) {
            pick -= rates[event];
            ++event;
        }
        switch (event) {
            case 0: --active; ++failed; break;
            case 1: --standby; ++failed; break;
            case 2: --standby; ++active; break;
            default:
                --failed;
                if (policy == Policy::hot) {
                    ++active;
                } else {
                    ++standby;
                }
                break;
        }
    }

    double mean = 0;
    for (double u : up_time) mean += u / batch_len;
    mean /= batches;
    double var = 0;
    for (double u : up_time) var += (u / batch_len - mean) * (u / batch_len - mean);
    var /= (batches - 1);
    return {mean, std::sqrt(var / batches)};
}

using Point = std::pair<double, double>;  // (cost, availability)

// O(n^2) Pareto filter: keeps a point unless another point is at least as
// good in both objectives and strictly better in one; keeps the first copy
// of exact duplicates.
inline std::vector<Point> brute_force_filter(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < pts.size() && keep; ++j) {
            if (i == j) continue;
            const bool weakly = pts[j].first <= pts[i].first && pts[j].second >= pts[i].second;
            const bool strictly = pts[j].first < pts[i].first || pts[j].second > pts[i].second;
            if (weakly && strictly) keep = false;
            if (pts[j] == pts[i] && j < i) keep = false;
        }
        if (keep) out.push_back(pts[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Area of the union of rectangles [c, ref_c] x [ref_a, a] via coordinate
// compression: every cell of the grid spanned by all coordinates is either
// fully covered or not.
inline double rectangle_union_area(const std::vector<Point>& pts, double ref_c, double ref_a) {
    std::vector<double> xs{ref_c}, ys{ref_a};
    for (const auto& [c, a] : pts) {
        if (c < ref_c) xs.push_back(c);
        if (a > ref_a) ys.push_back(a);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    double area = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const double cx = 0.5 * (xs[i] + xs[i + 1]);
            const double cy = 0.5 * (ys[j] + ys[j + 1]);
            for (const auto& [c, a] : pts) {
                if (c <= cx && a >= cy) {
                    area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
                    break;
                }
            }
        }
    }
    return area;
}

struct MonteCarloArea {
    double estimate;
    double covered_fraction;
    double box_area;
};

// Uniform sampling over [min cost, ref_c] x [ref_a, max availability].
inline MonteCarloArea monte_carlo_area(const std::vector<Point>& pts, double ref_c, double ref_a, long samples,
                                       std::uint64_t seed) {
    double lo_c = ref_c, hi_a = ref_a;
    for (const auto& [c, a] : pts) {
        lo_c = std::min(lo_c, c);
        hi_a = std::max(hi_a, a);
    }
    const double box = (ref_c - lo_c) * (hi_a - ref_a);
    if (box <= 0) return {0, 0, 0};
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uc(lo_c, ref_c), ua(ref_a, hi_a);
    long hits = 0;
    for (long s = 0; s < samples; ++s) {
        const double x = uc(gen), y = ua(gen);
        for (const auto& [c, a] : pts) {
            if (c <= x && a >= y) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {frac * box, frac, box};
}

}  // namespace oracle
