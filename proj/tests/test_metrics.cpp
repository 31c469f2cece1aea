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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rapbench/error.hpp"
#include "rapbench/metrics.hpp"
#include "support/oracles.hpp"

using namespace rapbench;
using metrics::ObjectivePoint;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<ObjectivePoint> random_points(std::mt19937_64& gen, int n, bool grid) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> g(0, 9);
    std::vector<ObjectivePoint> pts(n);
    for (auto& p : pts) {
        // A coarse grid forces ties and exact duplicates.
        p = grid ? ObjectivePoint{g(gen) / 10.0, g(gen) / 10.0} : ObjectivePoint{u(gen), u(gen)};
    }
    return pts;
}

std::vector<oracle::Point> as_pairs(const std::vector<ObjectivePoint>& pts) {
    std::vector<oracle::Point> out;
    for (const auto& p : pts) out.emplace_back(p.cost, p.availability);
    return out;
}

}  // namespace

TEST_CASE("filter example", "[metrics]") {
    const std::vector<ObjectivePoint> pts{{10, 0.9}, {20, 0.99}, {15, 0.85}};
    const auto f = metrics::pareto_filter(pts);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == ObjectivePoint{10, 0.9});
    CHECK(f[1] == ObjectivePoint{20, 0.99});
    CHECK(metrics::pareto_filter(std::vector<ObjectivePoint>{{3, 0.5}}).size() == 1);
    CHECK(metrics::pareto_filter(std::vector<ObjectivePoint>{}).empty());
}

TEST_CASE("filter equals the brute-force filter", "[metrics]") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial * 10 % 2000;
        const auto pts = random_points(gen, n, trial % 2 == 0);
        const auto fast = as_pairs(metrics::pareto_filter(pts));
        REQUIRE(fast == oracle::brute_force_filter(as_pairs(pts)));
        // Idempotent and order independent.
        const auto again = metrics::pareto_filter(metrics::pareto_filter(pts));
        REQUIRE(as_pairs(again) == fast);
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        REQUIRE(as_pairs(metrics::pareto_filter(shuffled)) == fast);
    }
}

TEST_CASE("filter indices keep the first duplicate", "[metrics]") {
    const std::vector<ObjectivePoint> pts{{1, 0.5}, {2, 0.7}, {1, 0.5}, {0.5, 0.1}};
    CHECK(metrics::pareto_filter_indices(pts) == std::vector<std::size_t>{3, 0, 1});
}

TEST_CASE("hypervolume worked example", "[metrics]") {
    const std::vector<ObjectivePoint> front{{10, 0.9}, {20, 0.99}};
    CHECK_THAT(metrics::hypervolume_2d(front, {30, 0.5}), WithinAbs(8.9, 1e-12));
    CHECK(metrics::hypervolume_2d(std::vector<ObjectivePoint>{}, {30, 0.5}) == 0.0);
}

TEST_CASE("hypervolume equals the rectangle union", "[metrics]") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 300; ++trial) {
        const auto pts = random_points(gen, 1 + trial % 50, trial % 3 == 0);
        const metrics::ReferencePoint ref{0.9, 0.1};
        const double hv = metrics::hypervolume_2d(pts, ref);
        REQUIRE_THAT(hv, WithinAbs(oracle::rectangle_union_area(as_pairs(pts), ref.cost, ref.availability), 1e-12));
    }
}

TEST_CASE("hypervolume invariants", "[metrics]") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto front = metrics::pareto_filter(random_points(gen, 1 + trial % 30, false));
        const auto ref = metrics::derive_reference(front);
        const double hv = metrics::hypervolume_2d(front, ref);

        double min_cost = 1e9, max_avail = -1;
        for (const auto& p : front) {
            min_cost = std::min(min_cost, p.cost);
            max_avail = std::max(max_avail, p.availability);
        }
        REQUIRE(hv <= (ref.cost - min_cost) * (max_avail - ref.availability) + 1e-12);

        // A dominated extra point changes nothing.
        auto with_dominated = front;
        const auto& anchor = front[trial % front.size()];
        with_dominated.push_back({anchor.cost + 0.01, anchor.availability - 0.01});
        REQUIRE(metrics::hypervolume_2d(with_dominated, ref) == hv);
        // The reference stays put too.
        const auto ref2 = metrics::derive_reference(with_dominated);
        REQUIRE(ref2.cost == ref.cost);
        REQUIRE(ref2.availability == ref.availability);

        // A new nondominated point inside the box strictly increases HV.
        const ObjectivePoint better{min_cost - 0.01, max_avail + 0.01};
        auto extended = front;
        extended.push_back(better);
        REQUIRE(metrics::hypervolume_2d(extended, ref) > hv);
    }
}

TEST_CASE("reference derivation", "[metrics]") {
    const std::vector<ObjectivePoint> pool{{10, 0.9}, {20, 0.99}};
    const auto ref = metrics::derive_reference(pool);
    CHECK(ref.cost == 20);
    CHECK(ref.availability == 0.9);
    const std::vector<ObjectivePoint> single{{5, 0.7}};
    const auto r1 = metrics::derive_reference(single);
    CHECK(r1.cost == 5);
    CHECK(r1.availability == 0.7);
    CHECK(metrics::hypervolume_2d(single, r1) == 0.0);
    CHECK_THROWS_AS(metrics::derive_reference(std::vector<ObjectivePoint>{}), Error);
}

TEST_CASE("relative distance", "[metrics]") {
    CHECK(metrics::relative_distance(5, 5) == 0.0);
    CHECK_THAT(metrics::relative_distance(0.99, 1.0), WithinAbs(0.01, 1e-15));
    CHECK(metrics::relative_distance(0, 3) == 1.0);
    CHECK_THROWS_AS(metrics::relative_distance(1, 0), Error);
}

TEST_CASE("strategy proportions", "[metrics]") {
    using ctmc::Strategy;
    const std::vector<rap::Phenotype> all_mixed{{std::vector<int>(5, 0), std::vector<Strategy>(5, Strategy::mixed)}};
    CHECK(metrics::strategy_proportions(all_mixed) == metrics::StrategyShares{0, 0, 1, 0});

    const std::vector<rap::Phenotype> two{{{0, 0}, {Strategy::cold, Strategy::hot}},
                                          {{0, 0}, {Strategy::mixed, Strategy::hot}}};
    CHECK(metrics::strategy_proportions(two) == metrics::StrategyShares{0.25, 0, 0.25, 0.5});

    const std::vector<ObjectivePoint> points{{1, 0.5}, {2, 0.4}};  // second is dominated
    CHECK(metrics::strategy_proportions(two, points, metrics::ProportionScope::pareto_only) ==
          metrics::StrategyShares{0.5, 0, 0, 0.5});
    CHECK(metrics::strategy_proportions(two, points, metrics::ProportionScope::all) ==
          metrics::StrategyShares{0.25, 0, 0.25, 0.5});
    CHECK_THROWS_AS(metrics::strategy_proportions(std::vector<rap::Phenotype>{}), Error);
}

TEST_CASE("archive stays equal to the filtered stream", "[metrics]") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_points(gen, 500, trial % 2 == 0);
        metrics::ParetoArchive<int> archive;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            archive.insert(pts[i], static_cast<int>(i));
            if (i % 50 == 0) {
                const std::vector<ObjectivePoint> seen(pts.begin(), pts.begin() + static_cast<long>(i) + 1);
                REQUIRE(as_pairs(archive.points()) == as_pairs(metrics::pareto_filter(seen)));
            }
        }
        const auto idx = metrics::pareto_filter_indices(pts);
        REQUIRE(archive.size() == idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) REQUIRE(archive.entries()[i].payload == static_cast<int>(idx[i]));
    }
}
