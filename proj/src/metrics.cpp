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

#include "rapbench/metrics.hpp"

#include <numeric>

#include "rapbench/error.hpp"

namespace rapbench::metrics {

bool pareto_dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept {
    return a.cost <= b.cost && a.availability >= b.availability &&
           (a.cost < b.cost || a.availability > b.availability);
}

std::vector<std::size_t> pareto_filter_indices(std::span<const ObjectivePoint> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const auto& a = points[i];
        const auto& b = points[j];
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.availability != b.availability) return a.availability > b.availability;
        return i < j;
    });
    std::vector<std::size_t> kept;
    for (std::size_t idx : order) {
        // Sorted by cost, a point survives iff it beats every cheaper one.
        if (kept.empty() || points[idx].availability > points[kept.back()].availability) kept.push_back(idx);
    }
    return kept;
}

std::vector<ObjectivePoint> pareto_filter(std::span<const ObjectivePoint> points) {
    std::vector<ObjectivePoint> out;
    for (std::size_t idx : pareto_filter_indices(points)) out.push_back(points[idx]);
    return out;
}

double hypervolume_2d(std::span<const ObjectivePoint> front, const ReferencePoint& ref) {
    const auto filtered = pareto_filter(front);
    double area = 0;
    double floor = ref.availability;
    for (const auto& p : filtered) {
        if (p.cost >= ref.cost) break;
        if (p.availability <= floor) continue;
        area += (ref.cost - p.cost) * (p.availability - floor);
        floor = p.availability;
    }
    return area;
}

ReferencePoint derive_reference(std::span<const ObjectivePoint> pooled) {
    const auto front = pareto_filter(pooled);
    if (front.empty()) fail(ErrorCode::invalid_argument, "cannot derive a reference point from an empty pool");
    // Ascending cost implies ascending availability.
    return {front.back().cost, front.front().availability};
}

double relative_distance(double hv, double hv_best) {
    if (!(hv_best > 0)) fail(ErrorCode::undefined_metric, "relative distance needs a positive best hypervolume");
    return std::clamp(1.0 - hv / hv_best, 0.0, 1.0);
}

StrategyShares strategy_proportions(std::span<const rap::Phenotype> pool) {
    std::array<std::size_t, 4> counts{};
    std::size_t total = 0;
    for (const auto& p : pool) {
        for (auto s : p.strategies) {
            ++counts[ctmc::code(s)];
            ++total;
        }
    }
    if (total == 0) fail(ErrorCode::invalid_argument, "strategy proportions of an empty pool");
    StrategyShares shares{};
    for (int i = 0; i < 4; ++i) shares[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return shares;
}

StrategyShares strategy_proportions(std::span<const rap::Phenotype> pool, std::span<const ObjectivePoint> points,
                                    ProportionScope scope) {
    if (pool.size() != points.size()) fail(ErrorCode::invalid_argument, "phenotypes and points differ in length");
    if (scope == ProportionScope::all) return strategy_proportions(pool);
    std::vector<rap::Phenotype> front;
    for (std::size_t idx : pareto_filter_indices(points)) front.push_back(pool[idx]);
    return strategy_proportions(front);
}

}  // namespace rapbench::metrics
