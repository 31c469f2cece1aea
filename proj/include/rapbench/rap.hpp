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

/// @file rap.hpp
/// Redundancy allocation problem instances, genotype decoding, objective
/// evaluation and initial populations.
///
/// A binary chromosome holds 10 bits per subsystem: 8 spare-count bits read
/// most-significant first, then 2 strategy bits (00 cold, 01 warm, 10 mixed,
/// 11 hot). A real genotype holds one spare coordinate in [0, 255] and one
/// strategy coordinate in [-0.5, 3.5] per subsystem.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rapbench/ctmc.hpp"
#include "rapbench/rng.hpp"
#include "rapbench/structures.hpp"

namespace rapbench::rap {

using ctmc::Strategy;
using ctmc::SubsystemParams;
using structures::CaseStudy;

inline constexpr int kSpareBits = 8;
inline constexpr int kStrategyBits = 2;
inline constexpr int kBitsPerSubsystem = kSpareBits + kStrategyBits;
inline constexpr int kMaxSpares = 255;
inline constexpr double kStrategyCoordMin = -0.5;
inline constexpr double kStrategyCoordMax = 3.5;

struct InstanceSpec {
    CaseStudy case_study = CaseStudy::cs1;
    double weight_limit = 0;
    std::vector<SubsystemParams> subsystems;

    int m() const noexcept { return static_cast<int>(subsystems.size()); }

    /// Throws invalid_parameters / invalid_configuration on a malformed instance.
    void validate() const;

    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

/// "CS1_W120" style identifier.
std::string problem_id(const InstanceSpec& inst);

/// Published weight limits for a case study.
std::vector<double> bundled_weight_limits(CaseStudy c);

/// One of the 24 bundled instances. Throws invalid_argument if `weight_limit`
/// is not in the case's published set.
InstanceSpec bundled_instance(CaseStudy c, double weight_limit);

InstanceSpec parse_instance(std::string_view json_text);
std::string instance_to_json(const InstanceSpec& inst);
InstanceSpec load_instance(const std::filesystem::path& path);

struct Phenotype {
    std::vector<int> spares;
    std::vector<Strategy> strategies;

    std::size_t size() const noexcept { return spares.size(); }

    friend bool operator==(const Phenotype&, const Phenotype&) = default;
};

using BinaryGenotype = std::vector<std::uint8_t>;

struct RealGenotype {
    std::vector<double> spares;
    std::vector<double> strategy;
};

/// Throws invalid_argument if the length is not a multiple of 10 or a bit is not 0/1.
Phenotype decode_binary(std::span<const std::uint8_t> bits);
BinaryGenotype encode_binary(const Phenotype& p);

/// Clamps coordinates into range, then rounds half-up to the nearest integer.
Phenotype decode_real(const RealGenotype& g);

struct Evaluation {
    double cost = 0;
    double availability = 0;
    double weight = 0;
    double violation = 0;

    bool feasible() const noexcept { return violation == 0.0; }

    friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Objective evaluation with per-subsystem availabilities memoized by
/// (subsystem, strategy, n). Safe for concurrent use; the cache only stores
/// values of a pure function, so cached and uncached results are identical.
class Evaluator {
 public:
    explicit Evaluator(InstanceSpec inst);

    const InstanceSpec& instance() const noexcept { return inst_; }

    /// Throws invalid_argument if the phenotype does not match the instance
    /// or a spare count is outside [0, 255].
    Evaluation evaluate(const Phenotype& p) const;

    double subsystem_availability(int subsystem, int spares, Strategy strategy) const;

 private:
    std::size_t slot(int subsystem, int spares, Strategy strategy) const;

    InstanceSpec inst_;
    std::unique_ptr<std::atomic<double>[]> cache_;
};

/// Uncached evaluation.
Evaluation evaluate(const InstanceSpec& inst, const Phenotype& p);

/// Scaled binomial initialization: individual i sets each bit with
/// probability i / (N - 1). Throws invalid_configuration if N < 2.
std::vector<BinaryGenotype> sbi_init(int pop_size, int length, Rng& rng);
std::vector<BinaryGenotype> sbi_init(int pop_size, const InstanceSpec& inst, Rng& rng);

std::vector<BinaryGenotype> random_binary_init(int pop_size, int length, Rng& rng);
std::vector<RealGenotype> random_real_init(int pop_size, int m, Rng& rng);

}  // namespace rapbench::rap
