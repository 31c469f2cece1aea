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

#include "rapbench/rap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rapbench/error.hpp"

namespace rapbench::rap {

namespace {

using json = nlohmann::ordered_json;

// k, lambda_working, lambda_standby, sigma_cold, sigma_warm, mu, c, w
const std::vector<SubsystemParams> kCs123 = {
    {1, 0.75, 0.50, 5.30, 9.99, 1.14, 6.50, 3.56},
    {1, 0.26, 0.17, 6.65, 12.54, 1.87, 4.30, 2.87},
    {1, 0.51, 0.34, 6.08, 11.46, 1.58, 9.42, 2.05},
    {1, 0.70, 0.47, 6.99, 13.18, 1.55, 9.67, 2.54},
    {1, 0.89, 0.59, 5.16, 9.73, 1.14, 6.95, 2.21},
};

const std::vector<SubsystemParams> kCs4 = {
    {1, 0.43, 0.13, 5.13, 7.36, 2.18, 2.79, 1.67},  {2, 0.49, 0.14, 6.88, 9.88, 2.04, 1.94, 1.46},
    {3, 0.09, 0.03, 5.04, 7.24, 2.11, 1.64, 1.00},  {4, 0.47, 0.14, 6.37, 9.14, 2.62, 1.88, 1.13},
    {5, 0.13, 0.04, 6.57, 9.43, 2.94, 1.41, 1.10},  {6, 0.20, 0.06, 6.07, 8.71, 2.35, 1.55, 0.98},
    {7, 0.05, 0.01, 6.77, 9.72, 2.41, 1.15, 0.88},  {8, 0.04, 0.01, 6.80, 9.76, 2.98, 0.91, 0.78},
    {9, 0.11, 0.03, 6.25, 8.97, 2.95, 0.92, 1.10},  {10, 0.07, 0.02, 5.28, 7.58, 2.68, 0.85, 0.97},
};

const std::vector<SubsystemParams> kCs5 = {
    {3, 0.86, 0.26, 5.13, 7.36, 2.18, 2.79, 1.67}, {3, 0.98, 0.28, 6.88, 9.88, 2.04, 1.94, 1.46},
    {2, 0.65, 0.06, 5.04, 7.24, 2.11, 1.64, 1.00}, {2, 0.57, 0.28, 6.37, 9.14, 2.62, 1.88, 1.13},
    {4, 0.63, 0.18, 6.57, 9.43, 2.94, 1.41, 1.10}, {4, 0.70, 0.22, 6.07, 8.71, 2.35, 1.55, 0.98},
    {2, 0.55, 0.12, 6.77, 9.72, 2.41, 1.15, 0.88}, {2, 0.54, 0.12, 6.80, 9.76, 2.98, 0.91, 0.78},
    {3, 0.61, 0.16, 6.25, 8.97, 2.95, 0.92, 1.10}, {3, 0.57, 0.14, 5.28, 7.58, 2.68, 0.85, 0.97},
};

const std::vector<SubsystemParams> kCs6 = {
    {2, 0.67, 0.07, 6.61, 19.09, 2.96, 1.97, 1.07}, {2, 0.61, 0.06, 6.88, 19.87, 2.27, 1.09, 0.32},
    {3, 0.32, 0.03, 5.68, 16.41, 2.63, 1.73, 1.26}, {3, 0.63, 0.06, 6.94, 20.05, 2.87, 1.06, 1.72},
    {2, 0.59, 0.06, 5.15, 14.88, 2.68, 1.45, 0.82}, {2, 0.45, 0.05, 6.28, 18.14, 2.49, 1.61, 0.63},
    {1, 0.42, 0.04, 5.64, 16.29, 2.85, 2.05, 0.41}, {1, 0.60, 0.06, 5.06, 14.62, 2.79, 1.87, 1.96},
    {2, 0.48, 0.05, 5.61, 16.21, 2.31, 2.41, 1.47}, {2, 0.52, 0.05, 5.84, 16.87, 2.92, 0.87, 0.83},
    {3, 0.35, 0.04, 6.71, 19.38, 2.94, 0.92, 1.11}, {3, 0.30, 0.03, 5.58, 16.12, 2.64, 1.80, 0.74},
    {2, 0.67, 0.07, 5.68, 16.41, 2.60, 2.47, 0.60}, {2, 0.57, 0.06, 5.19, 14.99, 2.30, 1.63, 1.81},
    {1, 0.37, 0.04, 6.09, 17.59, 2.72, 1.39, 0.93},
};

const std::vector<SubsystemParams>& bundled_rows(CaseStudy c) {
    switch (c) {
        case CaseStudy::cs1:
        case CaseStudy::cs2:
        case CaseStudy::cs3: return kCs123;
        case CaseStudy::cs4: return kCs4;
        case CaseStudy::cs5: return kCs5;
        case CaseStudy::cs6: return kCs6;
    }
    fail(ErrorCode::invalid_argument, "unknown case study");
}

void require_phenotype(const InstanceSpec& inst, const Phenotype& p) {
    if (p.spares.size() != inst.subsystems.size() || p.strategies.size() != inst.subsystems.size()) {
        std::ostringstream msg;
        msg << "phenotype has " << p.spares.size() << " spare counts and " << p.strategies.size()
            << " strategies; instance has " << inst.subsystems.size() << " subsystems";
        fail(ErrorCode::invalid_argument, msg.str());
    }
    for (int s : p.spares) {
        if (s < 0 || s > kMaxSpares) {
            fail(ErrorCode::invalid_argument, "spare count " + std::to_string(s) + " outside [0, 255]");
        }
    }
}

void sum_cost_weight(const InstanceSpec& inst, const Phenotype& p, Evaluation& e) {
    e.cost = 0;
    e.weight = 0;
    for (std::size_t i = 0; i < inst.subsystems.size(); ++i) {
        const auto& s = inst.subsystems[i];
        const int n = s.k + p.spares[i];
        e.cost += s.cost * n;
        e.weight += s.weight * n;
    }
    e.violation = std::max(0.0, e.weight - inst.weight_limit);
}

double round_half_up(double x) { return std::floor(x + 0.5); }

const json& require_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::parse_error, std::string("instance is missing field '") + key + "'");
    return *it;
}

}  // namespace

void InstanceSpec::validate() const {
    if (m() != structures::subsystem_count(case_study)) {
        std::ostringstream msg;
        msg << structures::case_name(case_study) << " needs " << structures::subsystem_count(case_study)
            << " subsystems, instance has " << m();
        fail(ErrorCode::invalid_configuration, msg.str());
    }
    double base_weight = 0;
    for (const auto& s : subsystems) {
        s.validate();
        base_weight += s.weight * s.k;
    }
    if (!(weight_limit >= base_weight)) {
        std::ostringstream msg;
        msg << "weight limit " << weight_limit << " is below the base configuration weight " << base_weight;
        fail(ErrorCode::invalid_configuration, msg.str());
    }
}

std::string problem_id(const InstanceSpec& inst) {
    std::ostringstream id;
    id << structures::case_name(inst.case_study) << "_W" << inst.weight_limit;
    return id.str();
}

std::vector<double> bundled_weight_limits(CaseStudy c) {
    switch (c) {
        case CaseStudy::cs1:
        case CaseStudy::cs2:
        case CaseStudy::cs3: return {60, 80, 100, 120};
        case CaseStudy::cs4: return {100, 120, 140, 160};
        case CaseStudy::cs5: return {50, 60, 70, 80};
        case CaseStudy::cs6: return {80, 100, 120, 140};
    }
    return {};
}

InstanceSpec bundled_instance(CaseStudy c, double weight_limit) {
    const auto limits = bundled_weight_limits(c);
    if (std::find(limits.begin(), limits.end(), weight_limit) == limits.end()) {
        std::ostringstream msg;
        msg << "W=" << weight_limit << " is not a published limit for " << structures::case_name(c);
        fail(ErrorCode::invalid_argument, msg.str());
    }
    InstanceSpec inst{c, weight_limit, bundled_rows(c)};
    inst.validate();
    return inst;
}

InstanceSpec parse_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("instance is not valid JSON: ") + e.what());
    }
    try {
        InstanceSpec inst;
        const auto case_text = require_field(doc, "case_id").get<std::string>();
        const auto c = structures::parse_case(case_text);
        if (!c) fail(ErrorCode::parse_error, "unknown case_id '" + case_text + "'");
        inst.case_study = *c;
        inst.weight_limit = require_field(doc, "W").get<double>();
        for (const auto& row : require_field(doc, "subsystems")) {
            SubsystemParams s;
            s.k = require_field(row, "k").get<int>();
            s.lambda_working = require_field(row, "lambda_working").get<double>();
            s.lambda_standby = require_field(row, "lambda_standby").get<double>();
            s.sigma_cold = require_field(row, "sigma_cold").get<double>();
            s.sigma_warm = require_field(row, "sigma_warm").get<double>();
            s.mu = require_field(row, "mu").get<double>();
            s.cost = require_field(row, "c").get<double>();
            s.weight = require_field(row, "w").get<double>();
            inst.subsystems.push_back(s);
        }
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("malformed instance: ") + e.what());
    }
}

std::string instance_to_json(const InstanceSpec& inst) {
    json doc;
    doc["case_id"] = std::string(structures::case_name(inst.case_study));
    doc["W"] = inst.weight_limit;
    json rows = json::array();
    for (const auto& s : inst.subsystems) {
        rows.push_back({{"k", s.k},
                        {"lambda_working", s.lambda_working},
                        {"lambda_standby", s.lambda_standby},
                        {"sigma_cold", s.sigma_cold},
                        {"sigma_warm", s.sigma_warm},
                        {"mu", s.mu},
                        {"c", s.cost},
                        {"w", s.weight}});
    }
    // One subsystem per line keeps the file diffable against the table.
    std::string text = "{\n  \"case_id\": " + json(doc["case_id"]).dump() + ",\n  \"W\": " + doc["W"].dump() +
                       ",\n  \"subsystems\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        text += "    " + rows[i].dump() + (i + 1 < rows.size() ? ",\n" : "\n");
    }
    return text + "  ]\n}\n";
}

InstanceSpec load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open instance file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

Phenotype decode_binary(std::span<const std::uint8_t> bits) {
    if (bits.size() % kBitsPerSubsystem != 0) {
        fail(ErrorCode::invalid_argument, "binary genotype length must be a multiple of 10");
    }
    const std::size_t m = bits.size() / kBitsPerSubsystem;
    Phenotype p;
    p.spares.resize(m);
    p.strategies.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto chunk = bits.subspan(i * kBitsPerSubsystem, kBitsPerSubsystem);
        int value = 0;
        for (std::uint8_t b : chunk) {
            if (b > 1) fail(ErrorCode::invalid_argument, "binary genotype contains a non-binary gene");
            value = (value << 1) | b;
        }
        p.spares[i] = value >> kStrategyBits;
        p.strategies[i] = static_cast<Strategy>(value & 0b11);
    }
    return p;
}

BinaryGenotype encode_binary(const Phenotype& p) {
    if (p.spares.size() != p.strategies.size()) fail(ErrorCode::invalid_argument, "ragged phenotype");
    BinaryGenotype bits;
    bits.reserve(p.size() * kBitsPerSubsystem);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.spares[i] < 0 || p.spares[i] > kMaxSpares) fail(ErrorCode::invalid_argument, "spare count outside [0, 255]");
        const int value = (p.spares[i] << kStrategyBits) | ctmc::code(p.strategies[i]);
        for (int b = kBitsPerSubsystem - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((value >> b) & 1));
    }
    return bits;
}

Phenotype decode_real(const RealGenotype& g) {
    if (g.spares.size() != g.strategy.size()) fail(ErrorCode::invalid_argument, "ragged real genotype");
    Phenotype p;
    p.spares.reserve(g.spares.size());
    p.strategies.reserve(g.spares.size());
    for (std::size_t i = 0; i < g.spares.size(); ++i) {
        const double spares = std::clamp(g.spares[i], 0.0, static_cast<double>(kMaxSpares));
        const double strategy = std::clamp(g.strategy[i], kStrategyCoordMin, kStrategyCoordMax);
        p.spares.push_back(std::clamp(static_cast<int>(round_half_up(spares)), 0, kMaxSpares));
        p.strategies.push_back(static_cast<Strategy>(std::clamp(static_cast<int>(round_half_up(strategy)), 0, 3)));
    }
    return p;
}

Evaluator::Evaluator(InstanceSpec inst) : inst_(std::move(inst)) {
    inst_.validate();
    const std::size_t slots = static_cast<std::size_t>(inst_.m()) * 4 * (kMaxSpares + 1);
    cache_ = std::make_unique<std::atomic<double>[]>(slots);
    for (std::size_t i = 0; i < slots; ++i) cache_[i].store(std::numeric_limits<double>::quiet_NaN());
}

std::size_t Evaluator::slot(int subsystem, int spares, Strategy strategy) const {
    return (static_cast<std::size_t>(subsystem) * 4 + ctmc::code(strategy)) * (kMaxSpares + 1) + spares;
}

double Evaluator::subsystem_availability(int subsystem, int spares, Strategy strategy) const {
    if (subsystem < 0 || subsystem >= inst_.m() || spares < 0 || spares > kMaxSpares) {
        fail(ErrorCode::invalid_argument, "subsystem or spare count out of range");
    }
    auto& entry = cache_[slot(subsystem, spares, strategy)];
    double value = entry.load(std::memory_order_relaxed);
    if (std::isnan(value)) {
        const auto& params = inst_.subsystems[subsystem];
        value = ctmc::subsystem_availability(params, params.k + spares, strategy);
        entry.store(value, std::memory_order_relaxed);
    }
    return value;
}

Evaluation Evaluator::evaluate(const Phenotype& p) const {
    require_phenotype(inst_, p);
    Evaluation e;
    sum_cost_weight(inst_, p, e);
    std::vector<double> availability(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        availability[i] = subsystem_availability(static_cast<int>(i), p.spares[i], p.strategies[i]);
    }
    e.availability = structures::system_availability(inst_.case_study, availability);
    return e;
}

Evaluation evaluate(const InstanceSpec& inst, const Phenotype& p) {
    require_phenotype(inst, p);
    Evaluation e;
    sum_cost_weight(inst, p, e);
    std::vector<double> availability(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& params = inst.subsystems[i];
        availability[i] = ctmc::subsystem_availability(params, params.k + p.spares[i], p.strategies[i]);
    }
    e.availability = structures::system_availability(inst.case_study, availability);
    return e;
}

std::vector<BinaryGenotype> sbi_init(int pop_size, int length, Rng& rng) {
    if (pop_size < 2) fail(ErrorCode::invalid_configuration, "SBI needs a population of at least 2");
    if (length < 1) fail(ErrorCode::invalid_configuration, "genotype length must be positive");
    std::vector<BinaryGenotype> pop(pop_size, BinaryGenotype(length));
    for (int i = 0; i < pop_size; ++i) {
        const double p = static_cast<double>(i) / (pop_size - 1);
        for (auto& bit : pop[i]) bit = rng.bernoulli(p) ? 1 : 0;
    }
    return pop;
}

std::vector<BinaryGenotype> sbi_init(int pop_size, const InstanceSpec& inst, Rng& rng) {
    return sbi_init(pop_size, inst.m() * kBitsPerSubsystem, rng);
}

std::vector<BinaryGenotype> random_binary_init(int pop_size, int length, Rng& rng) {
    if (pop_size < 1) fail(ErrorCode::invalid_configuration, "population must be nonempty");
    std::vector<BinaryGenotype> pop(pop_size, BinaryGenotype(length));
    for (auto& g : pop) {
        for (auto& bit : g) bit = static_cast<std::uint8_t>(rng.next() >> 63);
    }
    return pop;
}

std::vector<RealGenotype> random_real_init(int pop_size, int m, Rng& rng) {
    if (pop_size < 1) fail(ErrorCode::invalid_configuration, "population must be nonempty");
    std::vector<RealGenotype> pop(pop_size);
    for (auto& g : pop) {
        g.spares.resize(m);
        g.strategy.resize(m);
        for (int i = 0; i < m; ++i) {
            g.spares[i] = rng.uniform(0.0, kMaxSpares);
            g.strategy[i] = rng.uniform(kStrategyCoordMin, kStrategyCoordMax);
        }
    }
    return pop;
}

}  // namespace rapbench::rap
