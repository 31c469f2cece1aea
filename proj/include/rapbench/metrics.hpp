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

/// @file metrics.hpp
/// Two-objective front utilities. Cost is minimized and availability is
/// maximized throughout.

#include <algorithm>
#include <array>
#include <iterator>
#include <span>
#include <vector>

#include "rapbench/rap.hpp"

namespace rapbench::metrics {

struct ObjectivePoint {
    double cost = 0;
    double availability = 0;

    friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

struct ReferencePoint {
    double cost = 0;
    double availability = 0;
};

/// a weakly better in both objectives and strictly better in one.
bool pareto_dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept;

/// Indices of the nondominated points, one index per distinct objective
/// vector (the first occurrence wins), ordered by ascending cost.
std::vector<std::size_t> pareto_filter_indices(std::span<const ObjectivePoint> points);

/// Nondominated subset, deduplicated, ordered by ascending cost.
std::vector<ObjectivePoint> pareto_filter(std::span<const ObjectivePoint> points);

/// Area dominated by the front and bounded by `ref`. The input is filtered
/// first; points that do not strictly dominate `ref` contribute nothing.
double hypervolume_2d(std::span<const ObjectivePoint> front, const ReferencePoint& ref);

/// Worst cost and worst availability over the Pareto-filtered pool.
/// Throws invalid_argument on an empty pool.
ReferencePoint derive_reference(std::span<const ObjectivePoint> pooled);

/// 1 - hv / hv_best. Throws undefined_metric when hv_best <= 0.
double relative_distance(double hv, double hv_best);

/// Fractions of subsystem-level assignments over (cold, warm, mixed, hot).
/// Throws invalid_argument on an empty pool.
using StrategyShares = std::array<double, 4>;
StrategyShares strategy_proportions(std::span<const rap::Phenotype> pool);

enum class ProportionScope { all, pareto_only };

/// Same count restricted, for `pareto_only`, to the phenotypes whose
/// objective points survive pareto_filter_indices.
StrategyShares strategy_proportions(std::span<const rap::Phenotype> pool,
                                    std::span<const ObjectivePoint> points, ProportionScope scope);

/// Nondominated archive of feasible solutions, kept sorted by ascending cost
/// (and therefore strictly ascending availability). Duplicate objective
/// vectors keep the first arrival.
template <typename Payload>
class ParetoArchive {
 public:
    struct Entry {
        ObjectivePoint point;
        Payload payload;
    };

    /// Returns true if the point entered the archive.
    bool insert(const ObjectivePoint& p, const Payload& payload) {
        // First entry with cost >= p.cost.
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p.cost,
                                   [](const Entry& e, double c) { return e.point.cost < c; });
        // Any cheaper entry has lower availability; the nearest cheaper one is
        // the best of them.
        if (it != entries_.begin() && std::prev(it)->point.availability >= p.availability) return false;
        if (it != entries_.end() && it->point.cost == p.cost && it->point.availability >= p.availability) {
            return false;
        }
        auto last = it;
        while (last != entries_.end() && last->point.availability <= p.availability) ++last;
        it = entries_.erase(it, last);
        entries_.insert(it, Entry{p, payload});
        return true;
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::vector<ObjectivePoint> points() const {
        std::vector<ObjectivePoint> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.point);
        return out;
    }

 private:
    std::vector<Entry> entries_;
};

}  // namespace rapbench::metrics
