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

/// @file ctmc.hpp
/// Continuous-time Markov chain models of repairable k-out-of-n:G
/// subsystems under cold, warm, mixed and hot standby.
///
/// A state is the triple (active, standby, failed). The state space is laid
/// out in three blocks: k+1 active (mixed only), k active, k-1 active; the
/// last block holds the failure states. Inside a block the standby count
/// grows from zero. Hot standby keeps every functioning unit active and is
/// a birth-death chain on the number of failed units.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace rapbench::ctmc {

enum class Strategy : int { cold = 0, warm = 1, mixed = 2, hot = 3 };

inline constexpr std::array<Strategy, 4> kAllStrategies = {Strategy::cold, Strategy::warm,
                                                          Strategy::mixed, Strategy::hot};

constexpr int code(Strategy s) noexcept { return static_cast<int>(s); }

/// Maps 0..3 to a strategy; throws invalid_argument otherwise.
Strategy strategy_from_code(int code);

std::string_view strategy_name(Strategy s) noexcept;

/// Accepts "cold", "warm", "mixed", "hot" or the digit codes "0".."3".
std::optional<Strategy> parse_strategy(std::string_view text) noexcept;

/// Rates of one subsystem together with its threshold and unit cost/weight.
struct SubsystemParams {
    int k = 1;
    double lambda_working = 0;
    double lambda_standby = 0;
    double sigma_cold = 0;
    double sigma_warm = 0;
    double mu = 0;
    double cost = 0;
    double weight = 0;

    /// Throws invalid_parameters unless all rates are positive,
    /// lambda_working > lambda_standby and sigma_warm > sigma_cold.
    void validate() const;

    friend bool operator==(const SubsystemParams&, const SubsystemParams&) = default;
};

struct MarkovState {
    int active = 0;
    int standby = 0;
    int failed = 0;
    bool working = false;

    friend bool operator==(const MarkovState&, const MarkovState&) = default;
};

using StateSpace = std::vector<MarkovState>;
using Generator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct MarkovModel {
    Strategy strategy = Strategy::hot;
    int n = 0;
    int k = 0;
    StateSpace states;
    Generator q;

    Eigen::MatrixXd dense_generator() const { return Eigen::MatrixXd(q); }
};

/// Number of working and failure states for (strategy, n, k).
struct StateCounts {
    int working = 0;
    int failure = 0;
    int total() const noexcept { return working + failure; }
};

StateCounts state_counts(Strategy strategy, int n, int k);

/// Enumerates the state space. Throws invalid_configuration unless n >= k >= 1.
StateSpace build_state_space(Strategy strategy, int n, int k);

/// Assembles the generator for a state space built with the same (strategy, n, k).
/// Throws invalid_parameters when `params` violates its invariants.
Generator build_transition_matrix(const StateSpace& space, const SubsystemParams& params,
                                  Strategy strategy);

MarkovModel build_model(const SubsystemParams& params, int n, Strategy strategy);

/// Stationary distribution of an irreducible generator. The last balance
/// equation is replaced by the normalization row and the system is solved by
/// sparse LU. Throws numerical_failure if the solve fails or yields a
/// probability below -1e-9.
std::vector<double> steady_state(const Generator& q);

/// Long-run fraction of time in working states.
double subsystem_availability(const SubsystemParams& params, int n, Strategy strategy);

/// Sum of pi over working states, for callers that already hold a model.
double working_probability(const StateSpace& space, std::span<const double> pi);

}  // namespace rapbench::ctmc
