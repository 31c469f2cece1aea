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

#include <cmath>
#include <filesystem>
#include <random>

#include "rapbench/error.hpp"
#include "rapbench/rap.hpp"
#include "rapbench/rng.hpp"

using namespace rapbench;
using rap::CaseStudy;
using rap::Strategy;
using Catch::Matchers::WithinAbs;

namespace {

rap::Phenotype uniform_phenotype(int m, int spares, Strategy s) {
    return {std::vector<int>(m, spares), std::vector<Strategy>(m, s)};
}

rap::Phenotype random_phenotype(std::mt19937_64& gen, int m) {
    std::uniform_int_distribution<int> sp(0, 255), st(0, 3);
    rap::Phenotype p;
    for (int i = 0; i < m; ++i) {
        p.spares.push_back(sp(gen));
        p.strategies.push_back(ctmc::strategy_from_code(st(gen)));
    }
    return p;
}

}  // namespace

TEST_CASE("binary decode examples", "[rap]") {
    const std::vector<std::uint8_t> chunk{0, 0, 0, 0, 0, 0, 1, 1, 1, 1};
    const auto p = rap::decode_binary(chunk);
    REQUIRE(p.size() == 1);
    CHECK(p.spares[0] == 3);
    CHECK(p.strategies[0] == Strategy::hot);

    const auto zeros = rap::decode_binary(std::vector<std::uint8_t>(50, 0));
    CHECK(zeros == uniform_phenotype(5, 0, Strategy::cold));

    const std::vector<std::uint8_t> codes{1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0};
    const auto q = rap::decode_binary(codes);
    CHECK(q.spares == std::vector<int>{128, 0});
    CHECK(q.strategies == std::vector<Strategy>{Strategy::warm, Strategy::mixed});

    CHECK_THROWS_AS(rap::decode_binary(std::vector<std::uint8_t>(9, 0)), Error);
    CHECK_THROWS_AS(rap::decode_binary(std::vector<std::uint8_t>(10, 2)), Error);
}

TEST_CASE("binary encoding round-trips", "[rap]") {
    std::mt19937_64 gen(1);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_phenotype(gen, 1 + i % 15);
        const auto bits = rap::encode_binary(p);
        REQUIRE(bits.size() == p.size() * 10);
        REQUIRE(rap::decode_binary(bits) == p);
    }
}

TEST_CASE("real decode rounds half-up and clamps", "[rap]") {
    auto decode = [](double spares, double strategy) {
        return rap::decode_real({{spares}, {strategy}});
    };
    CHECK(decode(0, 2.4).strategies[0] == Strategy::mixed);
    CHECK(decode(0, -0.5).strategies[0] == Strategy::cold);
    CHECK(decode(0, 3.5).strategies[0] == Strategy::hot);
    CHECK(decode(0, 1.5).strategies[0] == Strategy::mixed);
    CHECK(decode(0, -7).strategies[0] == Strategy::cold);
    CHECK(decode(3.7, 0).spares[0] == 4);
    CHECK(decode(2.5, 0).spares[0] == 3);
    CHECK(decode(-4, 0).spares[0] == 0);
    CHECK(decode(300, 0).spares[0] == 255);
}

TEST_CASE("uniform real strategy coordinates decode evenly", "[rap]") {
    Rng rng(4);
    const auto pop = rap::random_real_init(4000, 5, rng);
    std::array<int, 4> counts{};
    for (const auto& g : pop) {
        for (auto s : rap::decode_real(g).strategies) ++counts[ctmc::code(s)];
        for (double x : g.spares) REQUIRE((x >= 0 && x <= 255));
    }
    const double n = 20000;
    const double sigma = std::sqrt(n * 0.25 * 0.75);
    for (int c : counts) CHECK(std::abs(c - n / 4) <= 4 * sigma);
}

TEST_CASE("CS1 base configuration cost and weight", "[rap]") {
    for (double w : rap::bundled_weight_limits(CaseStudy::cs1)) {
        const auto inst = rap::bundled_instance(CaseStudy::cs1, w);
        for (Strategy s : ctmc::kAllStrategies) {
            const auto e = rap::evaluate(inst, uniform_phenotype(5, 0, s));
            CHECK_THAT(e.cost, WithinAbs(36.84, 1e-12));
            CHECK_THAT(e.weight, WithinAbs(13.23, 1e-12));
            CHECK(e.feasible());
        }
    }
}

TEST_CASE("CS1 all-hot base availability is the two-state product", "[rap]") {
    const auto inst = rap::bundled_instance(CaseStudy::cs1, 60);
    double want = 1;
    for (const auto& s : inst.subsystems) want *= s.mu / (s.lambda_working + s.mu);
    CHECK_THAT(rap::evaluate(inst, uniform_phenotype(5, 0, Strategy::hot)).availability, WithinAbs(want, 1e-13));
}

TEST_CASE("overweight phenotypes report the violation", "[rap]") {
    const auto inst = rap::bundled_instance(CaseStudy::cs1, 60);
    const auto e = rap::evaluate(inst, uniform_phenotype(5, 10, Strategy::warm));
    CHECK(e.weight > 60);
    CHECK_THAT(e.violation, WithinAbs(e.weight - 60, 1e-12));
    CHECK_FALSE(e.feasible());
    CHECK(e.availability > 0);
    CHECK(e.cost > 0);
}

TEST_CASE("cached evaluation equals uncached evaluation", "[rap]") {
    std::mt19937_64 gen(2);
    for (CaseStudy c : structures::kAllCases) {
        const auto inst = rap::bundled_instance(c, rap::bundled_weight_limits(c).back());
        const rap::Evaluator ev(inst);
        for (int i = 0; i < 20; ++i) {
            auto p = random_phenotype(gen, inst.m());
            for (int& s : p.spares) s %= 6;
            const auto a = ev.evaluate(p);
            REQUIRE(a == rap::evaluate(inst, p));
            REQUIRE(a == ev.evaluate(p));
        }
    }
}

TEST_CASE("phenotype validation", "[rap]") {
    const auto inst = rap::bundled_instance(CaseStudy::cs1, 60);
    CHECK_THROWS_AS(rap::evaluate(inst, uniform_phenotype(4, 0, Strategy::hot)), Error);
    CHECK_THROWS_AS(rap::evaluate(inst, uniform_phenotype(5, 256, Strategy::hot)), Error);
    CHECK_THROWS_AS(rap::evaluate(inst, uniform_phenotype(5, -1, Strategy::hot)), Error);
}

TEST_CASE("SBI ramps the bit probability with the index", "[rap]") {
    const int n = 200, length = 50;
    double mean_fraction = 0;
    std::vector<double> ones(n, 0.0);
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
        Rng rng(seed);
        const auto pop = rap::sbi_init(n, length, rng);
        REQUIRE(pop.size() == static_cast<std::size_t>(n));
        CHECK(pop.front() == rap::BinaryGenotype(length, 0));
        CHECK(pop.back() == rap::BinaryGenotype(length, 1));
        double total = 0;
        for (int i = 0; i < n; ++i) {
            int count = 0;
            for (auto b : pop[i]) count += b;
            ones[i] += count;
            total += count;
        }
        if (seed == 0) mean_fraction = total / (n * length);
    }
    CHECK(std::abs(mean_fraction - 0.5) <= 0.02);
    for (int i = 0; i < n; ++i) {
        const double p = static_cast<double>(i) / (n - 1);
        const double expect = seeds * length * p;
        const double sigma = std::sqrt(seeds * length * p * (1 - p));
        CHECK(std::abs(ones[i] - expect) <= 4 * sigma + 1e-9);
    }
    Rng rng(0);
    CHECK_THROWS_AS(rap::sbi_init(1, 10, rng), Error);
}

TEST_CASE("random binary init is a fair coin", "[rap]") {
    Rng rng(6);
    const auto pop = rap::random_binary_init(200, 50, rng);
    long ones = 0;
    for (const auto& g : pop) {
        for (auto b : g) ones += b;
    }
    const double n = 200.0 * 50.0;
    CHECK(std::abs(ones - n / 2) <= 3 * std::sqrt(n / 4));
}

TEST_CASE("initializers are deterministic under a seed", "[rap]") {
    Rng a(42), b(42);
    CHECK(rap::sbi_init(50, 30, a) == rap::sbi_init(50, 30, b));
    CHECK(rap::random_binary_init(50, 30, a) == rap::random_binary_init(50, 30, b));
    const auto ra = rap::random_real_init(20, 5, a);
    const auto rb = rap::random_real_init(20, 5, b);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].spares == rb[i].spares);
        CHECK(ra[i].strategy == rb[i].strategy);
    }
}

TEST_CASE("instance JSON round-trips and bundled files match the table", "[rap]") {
    const std::filesystem::path dir = std::filesystem::path(RAPBENCH_SOURCE_DIR) / "data" / "instances";
    int files = 0;
    for (CaseStudy c : structures::kAllCases) {
        for (double w : rap::bundled_weight_limits(c)) {
            const auto inst = rap::bundled_instance(c, w);
            CHECK(rap::parse_instance(rap::instance_to_json(inst)) == inst);
            const auto path = dir / (rap::problem_id(inst) + ".json");
            REQUIRE(std::filesystem::exists(path));
            CHECK(rap::load_instance(path) == inst);
            ++files;
        }
    }
    CHECK(files == 24);
    CHECK(rap::problem_id(rap::bundled_instance(CaseStudy::cs1, 120)) == "CS1_W120");
}

TEST_CASE("instance validation", "[rap]") {
    CHECK_THROWS_AS(rap::bundled_instance(CaseStudy::cs1, 70), Error);
    CHECK_THROWS_AS(rap::parse_instance("{"), Error);
    auto inst = rap::bundled_instance(CaseStudy::cs4, 100);
    inst.weight_limit = 10;  // below the base configuration weight
    CHECK_THROWS_AS(inst.validate(), Error);
    auto text = rap::instance_to_json(rap::bundled_instance(CaseStudy::cs1, 60));
    text.replace(text.find("\"mu\":1.14"), 9, "\"mu\":-1.0");
    CHECK_THROWS_AS(rap::parse_instance(text), Error);
}
