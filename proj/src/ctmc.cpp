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

#include "rapbench/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "rapbench/error.hpp"

namespace rapbench::ctmc {

namespace {

constexpr double kNegativeTolerance = 1e-9;

void require_configuration(int n, int k) {
    if (k < 1 || n < 1 || n < k) {
        std::ostringstream msg;
        msg << "invalid k-out-of-n configuration: n=" << n << ", k=" << k;
        fail(ErrorCode::invalid_configuration, msg.str());
    }
}

// Index of a state by (active, standby) for the three-block layouts. The
// failed count is implied by n.
class StateIndex {
 public:
    StateIndex(const StateSpace& space, int n, int k) : k_(k), width_(n + 2) {
        slots_.assign(3 * static_cast<std::size_t>(width_), -1);
        for (std::size_t i = 0; i < space.size(); ++i) {
            slots_[slot(space[i].active, space[i].standby)] = static_cast<int>(i);
        }
    }

    int find(int active, int standby) const {
        if (active < k_ - 1 || active > k_ + 1 || standby < 0 || standby >= width_) return -1;
        return slots_[slot(active, standby)];
    }

 private:
    std::size_t slot(int active, int standby) const {
        return static_cast<std::size_t>(active - (k_ - 1)) * width_ + standby;
    }

    int k_;
    int width_;
    std::vector<int> slots_;
};

Generator assemble(const std::vector<Eigen::Triplet<double>>& off_diagonal, int size) {
    std::vector<double> exit_rate(size, 0.0);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(off_diagonal.size() + size);
    for (const auto& t : off_diagonal) {
        if (t.value() == 0.0) continue;
        triplets.push_back(t);
        exit_rate[t.row()] += t.value();
    }
    for (int i = 0; i < size; ++i) triplets.emplace_back(i, i, -exit_rate[i]);
    Generator q(size, size);
    q.setFromTriplets(triplets.begin(), triplets.end());
    q.makeCompressed();
    return q;
}

Generator hot_generator(const StateSpace& space, const SubsystemParams& p) {
    const int size = static_cast<int>(space.size());
    std::vector<Eigen::Triplet<double>> rates;
    for (int i = 0; i < size; ++i) {
        const auto& s = space[i];
        // Down state: nothing else fails while the subsystem is stopped.
        if (i + 1 < size) rates.emplace_back(i, i + 1, s.active * p.lambda_working);
        if (i > 0) rates.emplace_back(i, i - 1, s.failed * p.mu);
    }
    return assemble(rates, size);
}

}  // namespace

Strategy strategy_from_code(int value) {
    if (value < 0 || value > 3) {
        fail(ErrorCode::invalid_argument, "strategy code out of range: " + std::to_string(value));
    }
    return static_cast<Strategy>(value);
}

std::string_view strategy_name(Strategy s) noexcept {
    switch (s) {
        case Strategy::cold: return "cold";
        case Strategy::warm: return "warm";
        case Strategy::mixed: return "mixed";
        case Strategy::hot: return "hot";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view text) noexcept {
    for (Strategy s : kAllStrategies) {
        if (text == strategy_name(s)) return s;
    }
    if (text.size() == 1 && text[0] >= '0' && text[0] <= '3') {
        return static_cast<Strategy>(text[0] - '0');
    }
    return std::nullopt;
}

void SubsystemParams::validate() const {
    std::ostringstream msg;
    if (k < 1) {
        msg << "k must be >= 1 (got " << k << ")";
    } else if (!(lambda_working > 0) || !(lambda_standby > 0) || !(sigma_cold > 0) ||
               !(sigma_warm > 0) || !(mu > 0)) {
        msg << "all rates must be strictly positive";
    } else if (!(lambda_working > lambda_standby)) {
        msg << "lambda_working (" << lambda_working << ") must exceed lambda_standby ("
            << lambda_standby << ")";
    } else if (!(sigma_warm > sigma_cold)) {
        msg << "sigma_warm (" << sigma_warm << ") must exceed sigma_cold (" << sigma_cold << ")";
    } else if (!std::isfinite(cost) || !std::isfinite(weight) || cost < 0 || weight < 0) {
        msg << "cost and weight must be finite and nonnegative";
    } else {
        return;
    }
    fail(ErrorCode::invalid_parameters, msg.str());
}

StateCounts state_counts(Strategy strategy, int n, int k) {
    require_configuration(n, k);
    const int spare = n - k;
    switch (strategy) {
        case Strategy::cold:
        case Strategy::warm: return {spare + 1, spare + 2};
        case Strategy::mixed: return {2 * spare + 1, spare + 2};
        case Strategy::hot: return {spare + 1, 1};
    }
    fail(ErrorCode::invalid_argument, "unknown strategy");
}

StateSpace build_state_space(Strategy strategy, int n, int k) {
    require_configuration(n, k);
    const int spare = n - k;
    StateSpace space;

    if (strategy == Strategy::hot) {
        space.reserve(spare + 2);
        for (int failed = 0; failed <= spare + 1; ++failed) {
            const int functioning = n - failed;
            space.push_back({functioning, 0, failed, functioning >= k});
        }
        return space;
    }

    const int with_extra_active = strategy == Strategy::mixed ? spare : 0;
    space.reserve(with_extra_active + 2 * spare + 3);
    for (int j = 0; j < with_extra_active; ++j) space.push_back({k + 1, j, spare - j - 1, true});
    for (int j = 0; j <= spare; ++j) space.push_back({k, j, spare - j, true});
    for (int j = 0; j <= spare + 1; ++j) space.push_back({k - 1, j, spare - j + 1, false});
    return space;
}

Generator build_transition_matrix(const StateSpace& space, const SubsystemParams& params,
                                  Strategy strategy) {
    params.validate();
    if (space.empty()) fail(ErrorCode::invalid_configuration, "empty state space");
    if (strategy == Strategy::hot) return hot_generator(space, params);

    const int n = space.front().active + space.front().standby + space.front().failed;
    const int k = params.k;
    const StateIndex index(space, n, k);
    const double sigma = strategy == Strategy::cold ? params.sigma_cold : params.sigma_warm;
    const bool standby_can_fail = strategy != Strategy::cold;

    std::vector<Eigen::Triplet<double>> rates;
    rates.reserve(space.size() * 4);
    for (int i = 0; i < static_cast<int>(space.size()); ++i) {
        const auto [active, standby, failed, working] = space[i];
        if (active + standby + failed != n || (active < k - 1) || active > k + 1) {
            fail(ErrorCode::invalid_configuration, "state space does not match k=" + std::to_string(k));
        }
        // Active unit fails.
        if (int j = index.find(active - 1, standby); j >= 0) {
            rates.emplace_back(i, j, active * params.lambda_working);
        }
        // Warm standby unit fails; impossible while the subsystem is down.
        if (standby_can_fail && active != k - 1) {
            if (int j = index.find(active, standby - 1); j >= 0) {
                rates.emplace_back(i, j, standby * params.lambda_standby);
            }
        }
        // Standby unit switched to active; up to two switch-overs run in parallel.
        if (int j = index.find(active + 1, standby - 1); j >= 0) {
            const int parallel = std::min(std::min(standby, 2), k + 1 - active);
            rates.emplace_back(i, j, parallel * sigma);
        }
        // Repaired unit returns to the standby pool.
        if (int j = index.find(active, standby + 1); j >= 0) {
            rates.emplace_back(i, j, failed * params.mu);
        }
    }
    return assemble(rates, static_cast<int>(space.size()));
}

MarkovModel build_model(const SubsystemParams& params, int n, Strategy strategy) {
    MarkovModel model;
    model.strategy = strategy;
    model.n = n;
    model.k = params.k;
    model.states = build_state_space(strategy, n, params.k);
    model.q = build_transition_matrix(model.states, params, strategy);
    return model;
}

std::vector<double> steady_state(const Generator& q) {
    const Eigen::Index size = q.rows();
    if (size == 0 || q.cols() != size) fail(ErrorCode::numerical_failure, "generator must be square and nonempty");

    // Balance equations are the columns of Q; the last one becomes sum(pi) = 1.
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(q.nonZeros() + size);
    for (Eigen::Index row = 0; row < size; ++row) {
        for (Generator::InnerIterator it(q, row); it; ++it) {
            if (it.col() != size - 1) triplets.emplace_back(it.col(), row, it.value());
        }
        triplets.emplace_back(size - 1, row, 1.0);
    }
    Eigen::SparseMatrix<double> system(size, size);
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "balance system is singular");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
    rhs[size - 1] = 1.0;
    Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        fail(ErrorCode::numerical_failure, "steady-state solve failed");
    }

    std::vector<double> pi(size);
    double total = 0;
    for (Eigen::Index i = 0; i < size; ++i) {
        if (x[i] < -kNegativeTolerance) {
            std::ostringstream msg;
            msg << "negative steady-state probability " << x[i] << " at state " << i;
            fail(ErrorCode::numerical_failure, msg.str());
        }
        pi[i] = std::max(0.0, x[i]);
        total += pi[i];
    }
    for (double& p : pi) p /= total;
    return pi;
}

double working_probability(const StateSpace& space, std::span<const double> pi) {
    double up = 0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i].working) up += pi[i];
    }
    return std::clamp(up, 0.0, 1.0);
}

double subsystem_availability(const SubsystemParams& params, int n, Strategy strategy) {
    const MarkovModel model = build_model(params, n, strategy);
    return working_probability(model.states, steady_state(model.q));
}

}  // namespace rapbench::ctmc
