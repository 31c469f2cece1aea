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

/// @file moea.hpp
/// Multi-objective optimizers for the redundancy allocation problem:
/// NSGA-II and SPEA2 over binary chromosomes, and a crowding-archive
/// particle swarm (MOPSO-CD style) over real genotypes.
///
/// All three share constrained domination: a feasible solution beats an
/// infeasible one, two infeasible solutions compare by violation, and two
/// feasible ones by Pareto dominance on (cost down, availability up).
///
/// Every run keeps an unbounded archive of the feasible nondominated
/// solutions it has evaluated. Snapshots of that archive are taken at the
/// exact evaluation counts of the checkpoint schedule.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rapbench/metrics.hpp"
#include "rapbench/rap.hpp"

namespace rapbench::moea {

enum class Algorithm { nsga2, spea2, mopso };
enum class Init { ri, sbi };

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;
std::string_view init_name(Init i) noexcept;
std::optional<Init> parse_init(std::string_view text) noexcept;

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::nsga2;
    int pop_size = 200;
    std::int64_t budget = 2'000'000;
    Init init = Init::sbi;
    double crossover_prob = 0.9;
    /// Per-bit flip probability; a negative value means 1 / chromosome length.
    double mutation_prob = -1.0;
    std::uint64_t seed = 0;
    /// Empty means default_checkpoints(pop_size, budget).
    std::vector<std::int64_t> checkpoints;

    double inertia = 0.4;
    double cognitive = 2.0;
    double social = 2.0;

    /// Throws invalid_configuration on pop_size < 2, budget < pop_size,
    /// probabilities outside [0,1], checkpoints outside [pop_size, budget] or
    /// not strictly increasing, and for SBI with the real-coded swarm.
    void validate() const;

    /// The explicit checkpoint list, or the default grid when none was given.
    std::vector<std::int64_t> schedule() const;
};

/// pop_size, then the 1-2-5 grid 2e2, 5e2, 1e3, ... inside (pop_size, budget),
/// then budget.
std::vector<std::int64_t> default_checkpoints(int pop_size, std::int64_t budget);

struct FrontEntry {
    metrics::ObjectivePoint point;
    rap::Phenotype phenotype;
};

struct Checkpoint {
    std::int64_t evaluations = 0;
    std::vector<FrontEntry> front;
};

struct Member {
    rap::Phenotype phenotype;
    rap::Evaluation evaluation;
};

struct RunTrace {
    OptimizerConfig config;
    std::vector<Checkpoint> checkpoints;
    std::vector<Member> final_population;
    std::int64_t evaluations = 0;
};

/// Constrained domination.
bool dominates(const rap::Evaluation& a, const rap::Evaluation& b) noexcept;

/// Fronts F1, F2, ... as index lists into `population`, each in ascending
/// index order.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const rap::Evaluation> population);

/// Crowding distance of the members of one front, in objective units
/// normalized by the front's range; boundary members get +infinity.
std::vector<double> crowding_distance(std::span<const rap::Evaluation> population,
                                      std::span<const std::size_t> front);

/// Runs the configured optimizer until the evaluation budget is spent.
/// Bit-reproducible for a given (instance, config).
RunTrace run(const rap::Evaluator& evaluator, const OptimizerConfig& cfg);
RunTrace run(const rap::InstanceSpec& inst, const OptimizerConfig& cfg);

}  // namespace rapbench::moea
