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
#include "rapbench/harness.hpp"
#include "rapbench/metrics.hpp"
#include "rapbench/moea.hpp"

using namespace rapbench;
using moea::Algorithm;
using moea::Init;
using rap::Evaluation;

namespace {

Evaluation feasible(double cost, double availability) { return {cost, availability, 0, 0}; }

moea::OptimizerConfig small_config(Algorithm a, Init init, std::int64_t budget, std::uint64_t seed) {
    moea::OptimizerConfig cfg;
    cfg.algorithm = a;
    cfg.init = init;
    cfg.pop_size = 40;
    cfg.budget = budget;
    cfg.seed = seed;
    return cfg;
}

struct Cell {
    Algorithm algorithm;
    Init init;
};
const Cell kCells[] = {{Algorithm::nsga2, Init::ri},
                       {Algorithm::nsga2, Init::sbi},
                       {Algorithm::spea2, Init::ri},
                       {Algorithm::spea2, Init::sbi},
                       {Algorithm::mopso, Init::ri}};

std::string serialize(const rap::InstanceSpec& inst, const moea::RunTrace& trace) {
    harness::RunRecord r;
    r.problem = rap::problem_id(inst);
    r.instance = inst;
    r.trace = trace;
    return harness::record_to_json(r);
}

}  // namespace

TEST_CASE("constrained domination examples", "[moea]") {
    CHECK(moea::dominates(feasible(10, 0.9), feasible(15, 0.85)));
    CHECK(moea::dominates(feasible(10, 0.9), Evaluation{5, 0.99, 0, 2}));
    CHECK_FALSE(moea::dominates(feasible(10, 0.9), feasible(5, 0.95)));
    CHECK(moea::dominates(feasible(5, 0.95), feasible(10, 0.9)));
    CHECK(moea::dominates(Evaluation{50, 0.1, 0, 1}, Evaluation{5, 0.99, 0, 2}));
    CHECK_FALSE(moea::dominates(feasible(5, 0.9), feasible(5, 0.9)));
}

TEST_CASE("dominance is irreflexive and asymmetric", "[moea]") {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> u(0, 5);
    for (int t = 0; t < 2000; ++t) {
        const Evaluation a{double(u(gen)), u(gen) / 5.0, 0, u(gen) < 2 ? double(u(gen)) : 0.0};
        const Evaluation b{double(u(gen)), u(gen) / 5.0, 0, u(gen) < 2 ? double(u(gen)) : 0.0};
        REQUIRE_FALSE(moea::dominates(a, a));
        REQUIRE_FALSE((moea::dominates(a, b) && moea::dominates(b, a)));
    }
}

TEST_CASE("nondominated sort examples", "[moea]") {
    const std::vector<Evaluation> pop{feasible(1, 0.9), feasible(2, 0.99), feasible(1.5, 0.85)};
    const auto fronts = moea::nondominated_sort(pop);
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
    CHECK(fronts[1] == std::vector<std::size_t>{2});

    const std::vector<Evaluation> same(4, feasible(1, 0.5));
    CHECK(moea::nondominated_sort(same).size() == 1);

    const std::vector<Evaluation> chain{feasible(3, 0.1), feasible(1, 0.9), feasible(2, 0.5)};
    const auto c = moea::nondominated_sort(chain);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == std::vector<std::size_t>{1});
    CHECK(c[1] == std::vector<std::size_t>{2});
    CHECK(c[2] == std::vector<std::size_t>{0});
}

TEST_CASE("nondominated sort matches repeated brute-force peeling", "[moea]") {
    std::mt19937_64 gen(8);
    std::uniform_int_distribution<int> u(0, 20);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t * 17 % 500;
        std::vector<Evaluation> pop(n);
        for (auto& e : pop) e = {double(u(gen)), u(gen) / 20.0, 0, u(gen) < 4 ? double(u(gen) % 3) : 0.0};
        const auto fronts = moea::nondominated_sort(pop);

        std::vector<bool> removed(n, false);
        std::size_t covered = 0;
        for (const auto& front : fronts) {
            std::vector<std::size_t> want;
            for (int i = 0; i < n; ++i) {
                if (removed[i]) continue;
                bool dominated = false;
                for (int j = 0; j < n && !dominated; ++j) {
                    if (!removed[j] && moea::dominates(pop[j], pop[i])) dominated = true;
                }
                if (!dominated) want.push_back(i);
            }
            REQUIRE(front == want);
            for (auto i : front) removed[i] = true;
            covered += front.size();
        }
        REQUIRE(covered == static_cast<std::size_t>(n));
    }
}

TEST_CASE("crowding distance marks the boundary", "[moea]") {
    const std::vector<Evaluation> pop{feasible(1, 0.1), feasible(2, 0.5), feasible(4, 0.6), feasible(8, 0.9)};
    const std::vector<std::size_t> front{0, 1, 2, 3};
    const auto d = moea::crowding_distance(pop, front);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[3]));
    // (4-1)/7 + (0.6-0.1)/0.8
    CHECK_THAT(d[1], Catch::Matchers::WithinAbs(3.0 / 7.0 + 0.5 / 0.8, 1e-12));
}

TEST_CASE("default checkpoints", "[moea]") {
    CHECK(moea::default_checkpoints(200, 200000) ==
          std::vector<std::int64_t>{200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000, 200000});
    CHECK(moea::default_checkpoints(200, 200) == std::vector<std::int64_t>{200});
    CHECK(moea::default_checkpoints(40, 1234) == std::vector<std::int64_t>{40, 200, 500, 1000, 1234});
}

TEST_CASE("config validation", "[moea]") {
    auto cfg = small_config(Algorithm::mopso, Init::sbi, 100, 0);
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config(Algorithm::nsga2, Init::sbi, 10, 0);
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config(Algorithm::nsga2, Init::sbi, 100, 0);
    cfg.pop_size = 1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config(Algorithm::nsga2, Init::sbi, 100, 0);
    cfg.checkpoints = {40, 30};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.checkpoints = {40, 200};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.checkpoints = {40, 100};
    CHECK_NOTHROW(cfg.validate());
    cfg.crossover_prob = 1.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("budget equal to the population records the initial front", "[moea]") {
    const auto inst = rap::bundled_instance(rap::CaseStudy::cs1, 120);
    for (const auto& cell : kCells) {
        const auto trace = moea::run(inst, small_config(cell.algorithm, cell.init, 40, 1));
        REQUIRE(trace.evaluations == 40);
        REQUIRE(trace.checkpoints.size() == 1);
        CHECK(trace.checkpoints[0].evaluations == 40);
        REQUIRE(trace.final_population.size() == 40);

        std::vector<metrics::ObjectivePoint> feasible_points;
        for (const auto& m : trace.final_population) {
            if (m.evaluation.feasible()) feasible_points.push_back({m.evaluation.cost, m.evaluation.availability});
        }
        const auto want = metrics::pareto_filter(feasible_points);
        REQUIRE(trace.checkpoints[0].front.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(trace.checkpoints[0].front[i].point == want[i]);
    }
}

TEST_CASE("runs spend exactly the budget and hit every checkpoint", "[moea]") {
    const auto inst = rap::bundled_instance(rap::CaseStudy::cs2, 100);
    const rap::Evaluator ev(inst);
    for (const auto& cell : kCells) {
        auto cfg = small_config(cell.algorithm, cell.init, 1234, 5);
        const auto trace = moea::run(ev, cfg);
        CHECK(trace.evaluations == 1234);
        const auto schedule = cfg.schedule();
        REQUIRE(trace.checkpoints.size() == schedule.size());
        double last_hv = -1;
        const metrics::ReferencePoint ref{200, 0};
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            const auto& cp = trace.checkpoints[i];
            CHECK(cp.evaluations == schedule[i]);
            std::vector<metrics::ObjectivePoint> pts;
            for (const auto& e : cp.front) {
                pts.push_back(e.point);
                const auto check = ev.evaluate(e.phenotype);
                REQUIRE(check.feasible());
                REQUIRE(check.cost == e.point.cost);
                REQUIRE(check.availability == e.point.availability);
            }
            REQUIRE(metrics::pareto_filter(pts).size() == pts.size());
            const double hv = metrics::hypervolume_2d(pts, ref);
            REQUIRE(hv >= last_hv);
            last_hv = hv;
        }
        CHECK(trace.config.checkpoints == schedule);
    }
}

TEST_CASE("same seed gives identical traces", "[moea]") {
    const auto inst = rap::bundled_instance(rap::CaseStudy::cs3, 80);
    for (const auto& cell : kCells) {
        const auto cfg = small_config(cell.algorithm, cell.init, 2000, 77);
        const auto a = serialize(inst, moea::run(inst, cfg));
        const rap::Evaluator warm(inst);
        const auto b = serialize(inst, moea::run(warm, cfg));
        REQUIRE(a == b);
        auto other = cfg;
        other.seed = 78;
        CHECK(serialize(inst, moea::run(inst, other)) != a);
    }
}

TEST_CASE("optimizers improve on their initial population", "[moea]") {
    const auto inst = rap::bundled_instance(rap::CaseStudy::cs1, 100);
    for (const auto& cell : kCells) {
        const auto trace = moea::run(inst, small_config(cell.algorithm, cell.init, 4000, 9));
        std::vector<metrics::ObjectivePoint> first, last;
        for (const auto& e : trace.checkpoints.front().front) first.push_back(e.point);
        for (const auto& e : trace.checkpoints.back().front) last.push_back(e.point);
        const metrics::ReferencePoint ref{300, 0};
        INFO(moea::algorithm_name(cell.algorithm) << "+" << moea::init_name(cell.init));
        CHECK(metrics::hypervolume_2d(last, ref) > metrics::hypervolume_2d(first, ref));
    }
}
