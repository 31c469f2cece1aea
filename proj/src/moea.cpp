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

#include "rapbench/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rapbench/error.hpp"

namespace rapbench::moea {

namespace {

using rap::BinaryGenotype;
using rap::Evaluation;
using rap::Phenotype;
using rap::RealGenotype;

constexpr double kInf = std::numeric_limits<double>::infinity();

metrics::ObjectivePoint point_of(const Evaluation& e) { return {e.cost, e.availability}; }

// Counts evaluations against the budget, feeds the feasible archive and
// snapshots it at the checkpoint counts.
class EvaluationLedger {
 public:
    EvaluationLedger(const rap::Evaluator& evaluator, const OptimizerConfig& cfg)
        : evaluator_(evaluator), budget_(cfg.budget), schedule_(cfg.schedule()) {}

    std::int64_t remaining() const noexcept { return budget_ - count_; }
    std::int64_t count() const noexcept { return count_; }

    Evaluation evaluate(const Phenotype& p) {
        if (count_ >= budget_) fail(ErrorCode::invalid_configuration, "evaluation budget exceeded");
        const Evaluation e = evaluator_.evaluate(p);
        ++count_;
        if (e.feasible()) archive_.insert(point_of(e), p);
        while (next_ < schedule_.size() && schedule_[next_] == count_) {
            Checkpoint cp;
            cp.evaluations = count_;
            cp.front.reserve(archive_.size());
            for (const auto& entry : archive_.entries()) cp.front.push_back({entry.point, entry.payload});
            checkpoints_.push_back(std::move(cp));
            ++next_;
        }
        return e;
    }

    std::vector<Checkpoint> take_checkpoints() { return std::move(checkpoints_); }

 private:
    const rap::Evaluator& evaluator_;
    std::int64_t budget_;
    std::vector<std::int64_t> schedule_;
    std::size_t next_ = 0;
    std::int64_t count_ = 0;
    metrics::ParetoArchive<Phenotype> archive_;
    std::vector<Checkpoint> checkpoints_;
};

std::vector<Evaluation> evaluations_of(const std::vector<Member>& members) {
    std::vector<Evaluation> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.evaluation);
    return out;
}

// Two distinct random indices in [0, n), n >= 2.
std::pair<std::size_t, std::size_t> pick_two(Rng& rng, std::size_t n) {
    const auto a = static_cast<std::size_t>(rng.below(n));
    auto b = static_cast<std::size_t>(rng.below(n - 1));
    if (b >= a) ++b;
    return {a, b};
}

struct BinaryVariation {
    double crossover_prob;
    double mutation_prob;

    std::pair<BinaryGenotype, BinaryGenotype> operator()(const BinaryGenotype& p1, const BinaryGenotype& p2,
                                                         Rng& rng) const {
        BinaryGenotype c1 = p1;
        BinaryGenotype c2 = p2;
        if (rng.bernoulli(crossover_prob)) {
            for (std::size_t i = 0; i < c1.size(); ++i) {
                if (rng.bernoulli(0.5)) std::swap(c1[i], c2[i]);
            }
        }
        for (auto* child : {&c1, &c2}) {
            for (auto& bit : *child) {
                if (rng.bernoulli(mutation_prob)) bit ^= 1;
            }
        }
        return {std::move(c1), std::move(c2)};
    }
};

double resolved_mutation(const OptimizerConfig& cfg, std::size_t length) {
    return cfg.mutation_prob < 0 ? 1.0 / static_cast<double>(length) : cfg.mutation_prob;
}

std::vector<BinaryGenotype> initial_binary(const OptimizerConfig& cfg, int length, Rng& rng) {
    return cfg.init == Init::sbi ? rap::sbi_init(cfg.pop_size, length, rng)
                                 : rap::random_binary_init(cfg.pop_size, length, rng);
}

struct BinaryMember {
    BinaryGenotype genes;
    Member member;
};

BinaryMember evaluate_binary(EvaluationLedger& ledger, BinaryGenotype genes) {
    BinaryMember out;
    out.member.phenotype = rap::decode_binary(genes);
    out.member.evaluation = ledger.evaluate(out.member.phenotype);
    out.genes = std::move(genes);
    return out;
}

std::vector<Member> members_of(const std::vector<BinaryMember>& pop) {
    std::vector<Member> out;
    out.reserve(pop.size());
    for (const auto& b : pop) out.push_back(b.member);
    return out;
}

// ---------------------------------------------------------------- NSGA-II

struct RankInfo {
    std::vector<int> rank;
    std::vector<double> crowding;
};

RankInfo rank_population(std::span<const Evaluation> evals) {
    RankInfo info;
    info.rank.assign(evals.size(), 0);
    info.crowding.assign(evals.size(), 0.0);
    const auto fronts = nondominated_sort(evals);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        const auto cd = crowding_distance(evals, fronts[f]);
        for (std::size_t i = 0; i < fronts[f].size(); ++i) {
            info.rank[fronts[f][i]] = static_cast<int>(f);
            info.crowding[fronts[f][i]] = cd[i];
        }
    }
    return info;
}

std::size_t crowded_tournament(const RankInfo& info, Rng& rng) {
    const auto [a, b] = pick_two(rng, info.rank.size());
    if (info.rank[a] != info.rank[b]) return info.rank[a] < info.rank[b] ? a : b;
    if (info.crowding[a] != info.crowding[b]) return info.crowding[a] > info.crowding[b] ? a : b;
    return std::min(a, b);
}

// Keeps `keep` members: whole fronts first, the splitting front by
// descending crowding distance (index order breaks ties).
std::vector<std::size_t> nsga2_survivors(std::span<const Evaluation> evals, std::size_t keep) {
    std::vector<std::size_t> survivors;
    survivors.reserve(keep);
    for (const auto& front : nondominated_sort(evals)) {
        if (survivors.size() + front.size() <= keep) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            if (survivors.size() == keep) break;
            continue;
        }
        const auto cd = crowding_distance(evals, front);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return cd[i] > cd[j]; });
        for (std::size_t i = 0; survivors.size() < keep; ++i) survivors.push_back(front[order[i]]);
        break;
    }
    return survivors;
}

std::vector<Member> run_nsga2(EvaluationLedger& ledger, const OptimizerConfig& cfg, int length, Rng& rng) {
    const BinaryVariation vary{cfg.crossover_prob, resolved_mutation(cfg, length)};
    std::vector<BinaryMember> pop;
    pop.reserve(cfg.pop_size);
    for (auto& genes : initial_binary(cfg, length, rng)) pop.push_back(evaluate_binary(ledger, std::move(genes)));

    while (ledger.remaining() > 0) {
        const auto evals = evaluations_of(members_of(pop));
        const RankInfo info = rank_population(evals);
        const auto offspring_count = static_cast<std::size_t>(std::min<std::int64_t>(cfg.pop_size, ledger.remaining()));

        std::vector<BinaryMember> merged = pop;
        merged.reserve(pop.size() + offspring_count);
        while (merged.size() < pop.size() + offspring_count) {
            const auto& p1 = pop[crowded_tournament(info, rng)].genes;
            const auto& p2 = pop[crowded_tournament(info, rng)].genes;
            auto [c1, c2] = vary(p1, p2, rng);
            merged.push_back(evaluate_binary(ledger, std::move(c1)));
            if (merged.size() < pop.size() + offspring_count) merged.push_back(evaluate_binary(ledger, std::move(c2)));
        }

        const auto merged_evals = evaluations_of(members_of(merged));
        std::vector<BinaryMember> next;
        next.reserve(cfg.pop_size);
        for (std::size_t idx : nsga2_survivors(merged_evals, cfg.pop_size)) next.push_back(std::move(merged[idx]));
        pop = std::move(next);
    }
    return members_of(pop);
}

// ---------------------------------------------------------------- SPEA2

struct Normalizer {
    double cost_lo = 0, cost_span = 1, avail_lo = 0, avail_span = 1;

    explicit Normalizer(std::span<const Evaluation> evals) {
        if (evals.empty()) return;
        double c_lo = kInf, c_hi = -kInf, a_lo = kInf, a_hi = -kInf;
        for (const auto& e : evals) {
            c_lo = std::min(c_lo, e.cost);
            c_hi = std::max(c_hi, e.cost);
            a_lo = std::min(a_lo, e.availability);
            a_hi = std::max(a_hi, e.availability);
        }
        cost_lo = c_lo;
        avail_lo = a_lo;
        cost_span = c_hi > c_lo ? c_hi - c_lo : 1.0;
        avail_span = a_hi > a_lo ? a_hi - a_lo : 1.0;
    }

    double distance(const Evaluation& a, const Evaluation& b) const {
        const double dc = (a.cost - b.cost) / cost_span;
        const double da = (a.availability - b.availability) / avail_span;
        return std::sqrt(dc * dc + da * da);
    }
};

std::vector<std::vector<double>> distance_matrix(std::span<const Evaluation> evals) {
    const Normalizer norm(evals);
    std::vector<std::vector<double>> d(evals.size(), std::vector<double>(evals.size(), 0.0));
    for (std::size_t i = 0; i < evals.size(); ++i) {
        for (std::size_t j = i + 1; j < evals.size(); ++j) d[i][j] = d[j][i] = norm.distance(evals[i], evals[j]);
    }
    return d;
}

// Raw fitness (sum of dominators' strengths) plus density 1 / (sigma_k + 2).
std::vector<double> spea2_fitness(std::span<const Evaluation> evals, const std::vector<std::vector<double>>& dist) {
    const std::size_t n = evals.size();
    std::vector<std::vector<std::uint8_t>> dom(n, std::vector<std::uint8_t>(n, 0));
    std::vector<int> strength(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(evals[i], evals[j])) {
                dom[i][j] = 1;
                ++strength[i];
            }
        }
    }
    const auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    std::vector<double> fitness(n, 0.0);
    std::vector<double> row;
    for (std::size_t j = 0; j < n; ++j) {
        double raw = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (dom[i][j]) raw += strength[i];
        }
        row.assign(dist[j].begin(), dist[j].end());
        row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
        double sigma = 0;
        if (!row.empty()) {
            const std::size_t kth = std::min(k, row.size()) - (k > 0 ? 1 : 0);
            std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kth), row.end());
            sigma = row[kth];
        }
        fitness[j] = raw + 1.0 / (sigma + 2.0);
    }
    return fitness;
}

// Iteratively removes the member whose sorted neighbour distances are
// lexicographically smallest until `keep` remain.
std::vector<std::size_t> spea2_truncate(std::vector<std::size_t> members,
                                        const std::vector<std::vector<double>>& dist, std::size_t keep) {
    const std::size_t n = members.size();
    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto& list = neighbours[a];
        list.reserve(n - 1);
        for (std::size_t b = 0; b < n; ++b) {
            if (b != a) list.push_back(b);
        }
        const auto& row = dist[members[a]];
        std::stable_sort(list.begin(), list.end(),
                         [&](std::size_t x, std::size_t y) { return row[members[x]] < row[members[y]]; });
    }
    std::vector<std::uint8_t> removed(n, 0);
    std::size_t alive = n;

    auto less = [&](std::size_t a, std::size_t b) {
        auto ia = neighbours[a].begin();
        auto ib = neighbours[b].begin();
        while (true) {
            while (ia != neighbours[a].end() && removed[*ia]) ++ia;
            while (ib != neighbours[b].end() && removed[*ib]) ++ib;
            if (ia == neighbours[a].end() || ib == neighbours[b].end()) return false;
            const double da = dist[members[a]][members[*ia]];
            const double db = dist[members[b]][members[*ib]];
            if (da != db) return da < db;
            ++ia;
            ++ib;
        }
    };

    while (alive > keep) {
        std::size_t worst = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (removed[a]) continue;
            if (worst == n || less(a, worst)) worst = a;
        }
        removed[worst] = 1;
        --alive;
    }
    std::vector<std::size_t> out;
    out.reserve(keep);
    for (std::size_t a = 0; a < n; ++a) {
        if (!removed[a]) out.push_back(members[a]);
    }
    return out;
}

std::vector<std::size_t> spea2_select(std::span<const Evaluation> evals, std::size_t keep,
                                      std::vector<double>& fitness_out) {
    const auto dist = distance_matrix(evals);
    fitness_out = spea2_fitness(evals, dist);
    std::vector<std::size_t> nondominated;
    for (std::size_t i = 0; i < evals.size(); ++i) {
        if (fitness_out[i] < 1.0) nondominated.push_back(i);
    }
    if (nondominated.size() > keep) return spea2_truncate(std::move(nondominated), dist, keep);
    std::vector<std::size_t> order(evals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness_out[a] < fitness_out[b]; });
    order.resize(std::min(keep, order.size()));
    return order;
}

std::vector<Member> run_spea2(EvaluationLedger& ledger, const OptimizerConfig& cfg, int length, Rng& rng) {
    const BinaryVariation vary{cfg.crossover_prob, resolved_mutation(cfg, length)};
    std::vector<BinaryMember> population;
    for (auto& genes : initial_binary(cfg, length, rng)) population.push_back(evaluate_binary(ledger, std::move(genes)));
    std::vector<BinaryMember> archive;

    while (true) {
        std::vector<BinaryMember> pooled = std::move(archive);
        pooled.insert(pooled.end(), std::make_move_iterator(population.begin()), std::make_move_iterator(population.end()));
        const auto evals = evaluations_of(members_of(pooled));
        std::vector<double> fitness;
        const auto chosen = spea2_select(evals, cfg.pop_size, fitness);
        archive.clear();
        std::vector<double> archive_fitness;
        for (std::size_t idx : chosen) {
            archive.push_back(pooled[idx]);
            archive_fitness.push_back(fitness[idx]);
        }
        if (ledger.remaining() == 0) break;

        const auto offspring_count = static_cast<std::size_t>(std::min<std::int64_t>(cfg.pop_size, ledger.remaining()));
        auto tournament = [&]() -> const BinaryGenotype& {
            if (archive.size() == 1) return archive.front().genes;
            const auto [a, b] = pick_two(rng, archive.size());
            if (archive_fitness[a] != archive_fitness[b]) return archive[archive_fitness[a] < archive_fitness[b] ? a : b].genes;
            return archive[std::min(a, b)].genes;
        };
        population.clear();
        while (population.size() < offspring_count) {
            const auto& p1 = tournament();
            const auto& p2 = tournament();
            auto [c1, c2] = vary(p1, p2, rng);
            population.push_back(evaluate_binary(ledger, std::move(c1)));
            if (population.size() < offspring_count) population.push_back(evaluate_binary(ledger, std::move(c2)));
        }
    }
    return members_of(archive);
}

// ---------------------------------------------------------------- MOPSO

struct Particle {
    RealGenotype position;
    RealGenotype velocity;
    RealGenotype best_position;
    Evaluation best;
    Member current;
};

struct Leader {
    RealGenotype position;
    Member member;
};

double& coord(RealGenotype& g, std::size_t d, std::size_t m) { return d < m ? g.spares[d] : g.strategy[d - m]; }
double coord(const RealGenotype& g, std::size_t d, std::size_t m) { return d < m ? g.spares[d] : g.strategy[d - m]; }

std::pair<double, double> bounds(std::size_t d, std::size_t m) {
    return d < m ? std::pair{0.0, static_cast<double>(rap::kMaxSpares)}
                 : std::pair{rap::kStrategyCoordMin, rap::kStrategyCoordMax};
}

// Constrained-nondominated leader archive capped by crowding distance.
void update_leaders(std::vector<Leader>& leaders, const Leader& candidate, std::size_t cap) {
    for (const auto& l : leaders) {
        if (dominates(l.member.evaluation, candidate.member.evaluation)) return;
        if (l.member.evaluation == candidate.member.evaluation) return;
    }
    std::erase_if(leaders, [&](const Leader& l) { return dominates(candidate.member.evaluation, l.member.evaluation); });
    leaders.push_back(candidate);
    if (leaders.size() <= cap) return;
    std::vector<Evaluation> evals;
    for (const auto& l : leaders) evals.push_back(l.member.evaluation);
    std::vector<std::size_t> all(leaders.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto cd = crowding_distance(evals, all);
    const auto most_crowded = static_cast<std::size_t>(std::min_element(cd.begin(), cd.end()) - cd.begin());
    leaders.erase(leaders.begin() + static_cast<std::ptrdiff_t>(most_crowded));
}

std::vector<Member> run_mopso(EvaluationLedger& ledger, const OptimizerConfig& cfg, int m_int, Rng& rng) {
    const auto m = static_cast<std::size_t>(m_int);
    const std::size_t dims = 2 * m;
    const auto cap = static_cast<std::size_t>(cfg.pop_size);
    const double total = static_cast<double>(cfg.budget);

    std::vector<Particle> swarm;
    std::vector<Leader> leaders;
    for (auto& position : rap::random_real_init(cfg.pop_size, m_int, rng)) {
        Particle p;
        p.velocity.spares.assign(m, 0.0);
        p.velocity.strategy.assign(m, 0.0);
        p.current.phenotype = rap::decode_real(position);
        p.current.evaluation = ledger.evaluate(p.current.phenotype);
        p.best = p.current.evaluation;
        p.best_position = position;
        p.position = std::move(position);
        update_leaders(leaders, {p.position, p.current}, cap);
        swarm.push_back(std::move(p));
    }

    while (ledger.remaining() > 0) {
        std::vector<Evaluation> leader_evals;
        for (const auto& l : leaders) leader_evals.push_back(l.member.evaluation);
        std::vector<std::size_t> all(leaders.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        const auto leader_cd = crowding_distance(leader_evals, all);
        // Snapshot so every particle in this sweep follows the same leader set.
        const std::vector<Leader> guide = leaders;
        const double progress = static_cast<double>(ledger.count()) / total;
        const double turbulence = (1.0 - progress) / static_cast<double>(dims);

        const auto moves = static_cast<std::size_t>(std::min<std::int64_t>(cfg.pop_size, ledger.remaining()));
        for (std::size_t i = 0; i < moves; ++i) {
            Particle& p = swarm[i];
            std::size_t g = 0;
            if (guide.size() > 1) {
                const auto [a, b] = pick_two(rng, guide.size());
                g = leader_cd[a] != leader_cd[b] ? (leader_cd[a] > leader_cd[b] ? a : b) : std::min(a, b);
            }
            const RealGenotype& leader = guide[g].position;
            for (std::size_t d = 0; d < dims; ++d) {
                const auto [lo, hi] = bounds(d, m);
                double& x = coord(p.position, d, m);
                double& v = coord(p.velocity, d, m);
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                v = cfg.inertia * v + cfg.cognitive * r1 * (coord(p.best_position, d, m) - x) +
                    cfg.social * r2 * (coord(leader, d, m) - x);
                v = std::clamp(v, -(hi - lo), hi - lo);
                x += v;
                if (rng.bernoulli(turbulence)) x = rng.uniform(lo, hi);
                if (x < lo || x > hi) {
                    x = std::clamp(x, lo, hi);
                    v = -v;
                }
            }
            p.current.phenotype = rap::decode_real(p.position);
            p.current.evaluation = ledger.evaluate(p.current.phenotype);
            const bool improves = dominates(p.current.evaluation, p.best);
            const bool worse = dominates(p.best, p.current.evaluation);
            if (improves || (!worse && rng.bernoulli(0.5))) {
                p.best = p.current.evaluation;
                p.best_position = p.position;
            }
            update_leaders(leaders, {p.position, p.current}, cap);
        }
    }

    std::vector<Member> out;
    out.reserve(swarm.size());
    for (const auto& p : swarm) out.push_back(p.current);
    return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::nsga2: return "nsga2";
        case Algorithm::spea2: return "spea2";
        case Algorithm::mopso: return "mopso";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
    for (Algorithm a : {Algorithm::nsga2, Algorithm::spea2, Algorithm::mopso}) {
        if (text == algorithm_name(a)) return a;
    }
    return std::nullopt;
}

std::string_view init_name(Init i) noexcept { return i == Init::sbi ? "sbi" : "ri"; }

std::optional<Init> parse_init(std::string_view text) noexcept {
    if (text == "sbi") return Init::sbi;
    if (text == "ri") return Init::ri;
    return std::nullopt;
}

std::vector<std::int64_t> default_checkpoints(int pop_size, std::int64_t budget) {
    std::vector<std::int64_t> out{pop_size};
    for (std::int64_t decade = 100; decade <= budget; decade *= 10) {
        for (std::int64_t step : {2, 5, 10}) {
            const std::int64_t c = decade * step;
            if (c > out.back() && c < budget) out.push_back(c);
        }
    }
    if (budget > out.back()) out.push_back(budget);
    return out;
}

void OptimizerConfig::validate() const {
    std::ostringstream msg;
    if (pop_size < 2) {
        msg << "pop_size must be >= 2 (got " << pop_size << ")";
    } else if (budget < pop_size) {
        msg << "budget (" << budget << ") must be >= pop_size (" << pop_size << ")";
    } else if (!(crossover_prob >= 0 && crossover_prob <= 1)) {
        msg << "crossover_prob must lie in [0,1]";
    } else if (mutation_prob > 1) {
        msg << "mutation_prob must lie in [0,1] (negative selects 1/L)";
    } else if (algorithm == Algorithm::mopso && init == Init::sbi) {
        msg << "SBI initialization applies to binary encodings only; mopso is real-coded";
    } else {
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            const auto c = checkpoints[i];
            if (c < pop_size || c > budget || (i > 0 && c <= checkpoints[i - 1])) {
                msg << "checkpoints must be strictly increasing within [pop_size, budget]";
                break;
            }
        }
        if (msg.str().empty()) return;
    }
    fail(ErrorCode::invalid_configuration, msg.str());
}

std::vector<std::int64_t> OptimizerConfig::schedule() const {
    return checkpoints.empty() ? default_checkpoints(pop_size, budget) : checkpoints;
}

bool dominates(const Evaluation& a, const Evaluation& b) noexcept {
    const bool fa = a.feasible();
    const bool fb = b.feasible();
    if (fa != fb) return fa;
    if (!fa) return a.violation < b.violation;
    return metrics::pareto_dominates(point_of(a), point_of(b));
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Evaluation> population) {
    const std::size_t n = population.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(population[p], population[q])) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(population[q], population[p])) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const Evaluation> population, std::span<const std::size_t> front) {
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), kInf);
        return distance;
    }
    auto accumulate = [&](auto objective) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return objective(population[front[a]]) < objective(population[front[b]]);
        });
        const double lo = objective(population[front[order.front()]]);
        const double hi = objective(population[front[order.back()]]);
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        if (hi <= lo) return;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            distance[order[i]] += (objective(population[front[order[i + 1]]]) -
                                   objective(population[front[order[i - 1]]])) / (hi - lo);
        }
    };
    accumulate([](const Evaluation& e) { return e.cost; });
    accumulate([](const Evaluation& e) { return e.availability; });
    return distance;
}

RunTrace run(const rap::Evaluator& evaluator, const OptimizerConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    EvaluationLedger ledger(evaluator, cfg);
    const int m = evaluator.instance().m();
    const int length = m * rap::kBitsPerSubsystem;

    RunTrace trace;
    trace.config = cfg;
    if (trace.config.checkpoints.empty()) trace.config.checkpoints = cfg.schedule();
    switch (cfg.algorithm) {
        case Algorithm::nsga2: trace.final_population = run_nsga2(ledger, cfg, length, rng); break;
        case Algorithm::spea2: trace.final_population = run_spea2(ledger, cfg, length, rng); break;
        case Algorithm::mopso: trace.final_population = run_mopso(ledger, cfg, m, rng); break;
    }
    trace.evaluations = ledger.count();
    trace.checkpoints = ledger.take_checkpoints();
    return trace;
}

RunTrace run(const rap::InstanceSpec& inst, const OptimizerConfig& cfg) {
    const rap::Evaluator evaluator(inst);
    return run(evaluator, cfg);
}

}  // namespace rapbench::moea
