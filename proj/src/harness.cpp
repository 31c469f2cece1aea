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

#include "rapbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rapbench/error.hpp"
#include "rapbench/metrics.hpp"
#include "rapbench/stats.hpp"

namespace rapbench::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kRecordsDir = "records";

std::string method_label(std::string_view algorithm, std::string_view init) {
    return std::string(algorithm) + "+" + std::string(init);
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : it->template get<T>();
}

json phenotype_json(const rap::Phenotype& p, json obj) {
    obj["spares"] = p.spares;
    json strategies = json::array();
    for (auto s : p.strategies) strategies.push_back(ctmc::code(s));
    obj["strategies"] = std::move(strategies);
    return obj;
}

rap::Phenotype phenotype_from(const json& obj) {
    rap::Phenotype p;
    p.spares = obj.at("spares").get<std::vector<int>>();
    for (int code : obj.at("strategies").get<std::vector<int>>()) p.strategies.push_back(ctmc::strategy_from_code(code));
    return p;
}

json optimizer_json(const moea::OptimizerConfig& cfg) {
    json j;
    j["algorithm"] = std::string(moea::algorithm_name(cfg.algorithm));
    j["pop_size"] = cfg.pop_size;
    j["budget"] = cfg.budget;
    j["init"] = std::string(moea::init_name(cfg.init));
    j["crossover_prob"] = cfg.crossover_prob;
    j["mutation_prob"] = cfg.mutation_prob;
    j["seed"] = cfg.seed;
    j["checkpoints"] = cfg.checkpoints;
    j["inertia"] = cfg.inertia;
    j["cognitive"] = cfg.cognitive;
    j["social"] = cfg.social;
    return j;
}

moea::OptimizerConfig optimizer_from(const json& j) {
    moea::OptimizerConfig cfg;
    const auto algo = j.at("algorithm").get<std::string>();
    const auto parsed = moea::parse_algorithm(algo);
    if (!parsed) fail(ErrorCode::invalid_configuration, "unknown algorithm '" + algo + "'");
    cfg.algorithm = *parsed;
    cfg.pop_size = get_or(j, "pop_size", cfg.pop_size);
    cfg.budget = get_or(j, "budget", cfg.budget);
    if (auto it = j.find("init"); it != j.end()) {
        const auto init = moea::parse_init(it->get<std::string>());
        if (!init) fail(ErrorCode::invalid_configuration, "unknown init '" + it->get<std::string>() + "'");
        cfg.init = *init;
    }
    cfg.crossover_prob = get_or(j, "crossover_prob", cfg.crossover_prob);
    cfg.mutation_prob = get_or(j, "mutation_prob", cfg.mutation_prob);
    cfg.seed = get_or(j, "seed", cfg.seed);
    cfg.checkpoints = get_or(j, "checkpoints", cfg.checkpoints);
    cfg.inertia = get_or(j, "inertia", cfg.inertia);
    cfg.cognitive = get_or(j, "cognitive", cfg.cognitive);
    cfg.social = get_or(j, "social", cfg.social);
    return cfg;
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string(what) + " is not valid JSON: " + e.what());
    }
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

int resolve_workers(int configured) {
    if (const char* env = std::getenv("RAPBENCH_WORKERS")) {
        int value = 0;
        const std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) return value;
    }
    return std::max(1, configured);
}

fs::path records_dir_of(const fs::path& bench_dir) {
    const fs::path nested = bench_dir / kRecordsDir;
    return fs::is_directory(nested) ? nested : bench_dir;
}

std::vector<fs::path> list_records(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto& p = entry.path();
        if (entry.is_regular_file() && p.extension() == ".json" && p.filename().string().find("__") != std::string::npos) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_index(const fs::path& out_dir) {
    json index = json::array();
    for (const auto& path : list_records(out_dir / kRecordsDir)) {
        const RunRecord r = load_record(path);
        index.push_back({{"file", (fs::path(kRecordsDir) / path.filename()).generic_string()},
                         {"problem", r.problem},
                         {"algorithm", r.algorithm},
                         {"init", r.init},
                         {"run_index", r.run_index},
                         {"seed", r.seed},
                         {"status", r.ok ? "ok" : "failed"}});
    }
    write_file_atomic(out_dir / "index.json", index.dump(2) + "\n");
}

void merge_timings(const fs::path& out_dir, const std::map<std::string, double>& fresh) {
    std::map<std::string, std::string> rows;
    const fs::path path = out_dir / "timings.csv";
    if (fs::exists(path)) {
        std::istringstream in(read_file(path));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto cells = split_csv(line);
            if (cells.size() == 2) rows[cells[0]] = cells[1];
        }
    }
    for (const auto& [name, seconds] : fresh) rows[name] = format_number(seconds);
    std::string text = "record,wall_seconds\n";
    for (const auto& [name, seconds] : rows) text += name + "," + seconds + "\n";
    write_file_atomic(path, text);
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) fail(ErrorCode::invalid_argument, "cannot format number");
    return std::string(buffer, ptr);
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ostringstream tmp_name;
    tmp_name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    const fs::path tmp = path.parent_path() / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::io_error, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) fail(ErrorCode::io_error, "short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void BenchmarkConfig::validate() const {
    if (instances.empty()) fail(ErrorCode::invalid_configuration, "bench config lists no instances");
    if (algorithms.empty()) fail(ErrorCode::invalid_configuration, "bench config lists no algorithms");
    if (inits.empty()) fail(ErrorCode::invalid_configuration, "bench config lists no initializations");
    if (runs_per_cell < 1) fail(ErrorCode::invalid_configuration, "runs_per_cell must be >= 1");
    for (const auto& inst : instances) inst.validate();
    for (auto cfg : algorithms) {
        if (cfg.algorithm == moea::Algorithm::mopso) cfg.init = moea::Init::ri;
        cfg.validate();
    }
}

BenchmarkConfig parse_bench_config(std::string_view json_text, const fs::path& base_dir) {
    const json doc = parse_json(json_text, "bench config");
    try {
        BenchmarkConfig cfg;
        cfg.master_seed = get_or<std::uint64_t>(doc, "master_seed", 0);
        for (const auto& entry : doc.at("instances")) {
            if (auto file = entry.find("file"); file != entry.end()) {
                fs::path path = file->get<std::string>();
                if (path.is_relative()) path = base_dir / path;
                cfg.instances.push_back(rap::load_instance(path));
            } else if (entry.contains("subsystems")) {
                cfg.instances.push_back(rap::parse_instance(entry.dump()));
            } else {
                const auto name = entry.at("case_id").get<std::string>();
                const auto c = structures::parse_case(name);
                if (!c) fail(ErrorCode::invalid_configuration, "unknown case_id '" + name + "'");
                cfg.instances.push_back(rap::bundled_instance(*c, entry.at("W").get<double>()));
            }
        }
        for (const auto& entry : doc.at("algorithms")) cfg.algorithms.push_back(optimizer_from(entry));
        if (auto it = doc.find("inits"); it != doc.end()) {
            cfg.inits.clear();
            for (const auto& name : *it) {
                const auto init = moea::parse_init(name.get<std::string>());
                if (!init) fail(ErrorCode::invalid_configuration, "unknown init '" + name.get<std::string>() + "'");
                cfg.inits.push_back(*init);
            }
        }
        cfg.runs_per_cell = get_or(doc, "runs_per_cell", cfg.runs_per_cell);
        cfg.parallelism = get_or(doc, "parallelism", cfg.parallelism);
        fs::path out = get_or<std::string>(doc, "output_dir", cfg.output_dir.string());
        cfg.output_dir = out.is_relative() ? base_dir / out : out;
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("malformed bench config: ") + e.what());
    }
}

BenchmarkConfig load_bench_config(const fs::path& path) {
    return parse_bench_config(read_file(path), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view problem, std::string_view algorithm,
                              std::string_view init, int run_index) {
    std::uint64_t seed = mix_seed(master_seed, fnv1a(problem));
    seed = mix_seed(seed, fnv1a(algorithm));
    seed = mix_seed(seed, fnv1a(init));
    return mix_seed(seed, static_cast<std::uint64_t>(run_index));
}

std::string optimizer_config_to_json(const moea::OptimizerConfig& cfg) { return optimizer_json(cfg).dump(2); }

moea::OptimizerConfig parse_optimizer_config(std::string_view json_text) {
    const json doc = parse_json(json_text, "optimizer config");
    try {
        return optimizer_from(doc);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("malformed optimizer config: ") + e.what());
    }
}

std::string record_file_name(std::string_view problem, std::string_view algorithm, std::string_view init,
                             int run_index) {
    std::ostringstream name;
    name << problem << "__" << algorithm << "__" << init << "__r" << std::setw(2) << std::setfill('0') << run_index
         << ".json";
    return name.str();
}

std::string record_to_json(const RunRecord& r) {
    json doc;
    doc["problem"] = r.problem;
    doc["instance"] = json::parse(rap::instance_to_json(r.instance));
    doc["algorithm"] = r.algorithm;
    doc["init"] = r.init;
    doc["run_index"] = r.run_index;
    doc["seed"] = r.seed;
    doc["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) doc["error"] = r.error;
    doc["config"] = optimizer_json(r.trace.config);
    doc["evaluations"] = r.trace.evaluations;
    json checkpoints = json::array();
    for (const auto& cp : r.trace.checkpoints) {
        json front = json::array();
        for (const auto& e : cp.front) {
            front.push_back(phenotype_json(e.phenotype, {{"cost", e.point.cost}, {"availability", e.point.availability}}));
        }
        checkpoints.push_back({{"evaluations", cp.evaluations}, {"front", std::move(front)}});
    }
    doc["checkpoints"] = std::move(checkpoints);
    json population = json::array();
    for (const auto& m : r.trace.final_population) {
        population.push_back(phenotype_json(m.phenotype, {{"cost", m.evaluation.cost},
                                                          {"availability", m.evaluation.availability},
                                                          {"weight", m.evaluation.weight},
                                                          {"violation", m.evaluation.violation}}));
    }
    doc["final_population"] = std::move(population);
    return doc.dump(1) + "\n";
}

RunRecord parse_record(std::string_view json_text) {
    const json doc = parse_json(json_text, "run record");
    try {
        RunRecord r;
        r.problem = doc.at("problem").get<std::string>();
        r.instance = rap::parse_instance(doc.at("instance").dump());
        r.algorithm = doc.at("algorithm").get<std::string>();
        r.init = doc.at("init").get<std::string>();
        r.run_index = doc.at("run_index").get<int>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        r.ok = doc.at("status").get<std::string>() == "ok";
        r.error = get_or<std::string>(doc, "error", "");
        r.trace.config = optimizer_from(doc.at("config"));
        r.trace.evaluations = doc.at("evaluations").get<std::int64_t>();
        for (const auto& cp : doc.at("checkpoints")) {
            moea::Checkpoint c;
            c.evaluations = cp.at("evaluations").get<std::int64_t>();
            for (const auto& e : cp.at("front")) {
                c.front.push_back({{e.at("cost").get<double>(), e.at("availability").get<double>()}, phenotype_from(e)});
            }
            r.trace.checkpoints.push_back(std::move(c));
        }
        for (const auto& m : doc.at("final_population")) {
            moea::Member member;
            member.phenotype = phenotype_from(m);
            member.evaluation = {m.at("cost").get<double>(), m.at("availability").get<double>(),
                                 m.at("weight").get<double>(), m.at("violation").get<double>()};
            r.trace.final_population.push_back(std::move(member));
        }
        return r;
    } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("malformed run record: ") + e.what());
    }
}

RunRecord load_record(const fs::path& path) { return parse_record(read_file(path)); }

RunRecord execute_run(const rap::Evaluator& evaluator, const moea::OptimizerConfig& templ, std::string_view init,
                      int run_index, std::uint64_t seed) {
    RunRecord record;
    record.instance = evaluator.instance();
    record.problem = rap::problem_id(record.instance);
    record.algorithm = std::string(moea::algorithm_name(templ.algorithm));
    record.init = std::string(init);
    record.run_index = run_index;
    record.seed = seed;
    moea::OptimizerConfig cfg = templ;
    cfg.seed = seed;
    const auto parsed = moea::parse_init(init);
    if (parsed) cfg.init = *parsed;
    record.trace.config = cfg;

    const auto start = std::chrono::steady_clock::now();
    try {
        if (!parsed) fail(ErrorCode::invalid_configuration, "unknown init '" + std::string(init) + "'");
        record.trace = moea::run(evaluator, cfg);
    } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
    }
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

BenchSummary run_bench(const BenchmarkConfig& config) {
    config.validate();
    struct Task {
        std::size_t instance;
        std::size_t algorithm;
        moea::Init init;
        int run;
        fs::path path;
    };

    BenchSummary summary;
    const fs::path records_dir = config.output_dir / kRecordsDir;
    fs::create_directories(records_dir);

    std::vector<std::unique_ptr<rap::Evaluator>> evaluators;
    for (const auto& inst : config.instances) evaluators.push_back(std::make_unique<rap::Evaluator>(inst));

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < config.instances.size(); ++i) {
        const auto problem = rap::problem_id(config.instances[i]);
        for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
            const auto& algo = config.algorithms[a];
            for (auto init : config.inits) {
                if (algo.algorithm == moea::Algorithm::mopso && init == moea::Init::sbi) {
                    summary.not_applicable += config.runs_per_cell;
                    continue;
                }
                for (int run = 0; run < config.runs_per_cell; ++run) {
                    ++summary.planned;
                    const fs::path path = records_dir / record_file_name(problem, moea::algorithm_name(algo.algorithm),
                                                                         moea::init_name(init), run);
                    if (fs::exists(path)) {
                        try {
                            if (load_record(path).ok) {
                                ++summary.skipped_existing;
                                continue;
                            }
                        } catch (const Error&) {
                            // Unreadable record: run the cell again.
                        }
                    }
                    tasks.push_back({i, a, init, run, path});
                }
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::map<std::string, double> timings;
    auto worker = [&]() {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const Task& task = tasks[t];
            const auto problem = rap::problem_id(config.instances[task.instance]);
            const auto& templ = config.algorithms[task.algorithm];
            const auto init = moea::init_name(task.init);
            const auto seed = derive_run_seed(config.master_seed, problem, moea::algorithm_name(templ.algorithm), init,
                                              task.run);
            const RunRecord record = execute_run(*evaluators[task.instance], templ, init, task.run, seed);
            write_file_atomic(task.path, record_to_json(record));
            std::lock_guard lock(mutex);
            ++summary.executed;
            if (!record.ok) ++summary.failed;
            timings[task.path.filename().string()] = record.wall_seconds;
        }
    };
    const int workers = std::min<int>(resolve_workers(config.parallelism), static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    write_index(config.output_dir);
    merge_timings(config.output_dir, timings);
    return summary;
}

AnalysisSummary analyze(const fs::path& bench_dir, const fs::path& out_dir) {
    AnalysisSummary summary;
    if (!fs::is_directory(bench_dir)) fail(ErrorCode::io_error, "no bench directory at " + bench_dir.string());
    const auto paths = list_records(records_dir_of(bench_dir));

    // problem -> records (sorted by file name, hence by method then run).
    std::map<std::string, std::vector<RunRecord>> by_problem;
    for (const auto& path : paths) {
        RunRecord r = load_record(path);
        if (!r.ok) {
            summary.warnings.push_back("skipping failed record " + path.filename().string() + ": " + r.error);
            continue;
        }
        ++summary.records;
        by_problem[r.problem].push_back(std::move(r));
    }

    std::string hv_csv = "problem,method,run,evaluations,hv,relative_distance\n";
    std::string conv_csv = "problem,method,evaluations,runs,mean_hv,mean_relative_distance\n";
    std::string ranks_csv = "problem,evaluations,method,mean_rank,p_value,adjusted_p,indistinguishable,best\n";
    std::string prop_csv = "problem,method,scope,solutions,cold,warm,mixed,hot\n";
    json problems = json::array();

    for (const auto& [problem, records] : by_problem) {
        std::vector<metrics::ObjectivePoint> pool;
        for (const auto& r : records) {
            if (r.trace.checkpoints.empty()) continue;
            for (const auto& e : r.trace.checkpoints.back().front) pool.push_back(e.point);
        }
        if (metrics::pareto_filter(pool).empty()) {
            summary.warnings.push_back("problem " + problem + " has no feasible final front; skipped");
            continue;
        }
        ++summary.problems;
        const auto ref = metrics::derive_reference(pool);
        const double hv_best = metrics::hypervolume_2d(pool, ref);

        // method -> evaluations -> run -> hv
        std::map<std::string, std::map<std::int64_t, std::map<int, double>>> hv;
        std::set<std::string> methods;
        for (const auto& r : records) {
            const auto method = method_label(r.algorithm, r.init);
            methods.insert(method);
            for (const auto& cp : r.trace.checkpoints) {
                std::vector<metrics::ObjectivePoint> front;
                for (const auto& e : cp.front) front.push_back(e.point);
                const double value = metrics::hypervolume_2d(front, ref);
                hv[method][cp.evaluations][r.run_index] = value;
                const std::string rd = hv_best > 0 ? format_number(metrics::relative_distance(value, hv_best)) : "";
                hv_csv += csv_line({problem, method, std::to_string(r.run_index), std::to_string(cp.evaluations),
                                    format_number(value), rd});
            }
        }

        for (const auto& [method, per_budget] : hv) {
            for (const auto& [evals, runs] : per_budget) {
                double sum = 0, rd_sum = 0;
                for (const auto& [run, value] : runs) {
                    sum += value;
                    if (hv_best > 0) rd_sum += metrics::relative_distance(value, hv_best);
                }
                const double count = static_cast<double>(runs.size());
                conv_csv += csv_line({problem, method, std::to_string(evals), std::to_string(runs.size()),
                                      format_number(sum / count), hv_best > 0 ? format_number(rd_sum / count) : ""});
            }
        }

        // Rankings at every budget reached by all methods.
        std::set<std::int64_t> budgets;
        for (const auto& [method, per_budget] : hv) {
            for (const auto& [evals, runs] : per_budget) budgets.insert(evals);
        }
        const std::vector<std::string> names(methods.begin(), methods.end());
        json best_by_budget = json::object();
        for (std::int64_t budget : budgets) {
            std::set<int> shared_runs;
            bool first = true;
            bool complete = true;
            for (const auto& name : names) {
                auto it = hv[name].find(budget);
                if (it == hv[name].end()) {
                    complete = false;
                    break;
                }
                std::set<int> runs;
                for (const auto& [run, value] : it->second) runs.insert(run);
                if (first) {
                    shared_runs = runs;
                    first = false;
                } else {
                    std::set<int> both;
                    std::set_intersection(shared_runs.begin(), shared_runs.end(), runs.begin(), runs.end(),
                                          std::inserter(both, both.begin()));
                    shared_runs = std::move(both);
                }
            }
            if (!complete || shared_runs.empty()) continue;
            const std::string evals = std::to_string(budget);
            if (names.size() == 1) {
                ranks_csv += csv_line({problem, evals, names[0], "1", "1", "1", "true", "true"});
                best_by_budget[evals] = names[0];
                continue;
            }
            stats::ScoreMatrix scores;
            std::vector<std::vector<double>> samples(names.size());
            for (int run : shared_runs) {
                std::vector<double> row;
                for (std::size_t a = 0; a < names.size(); ++a) {
                    const double value = hv[names[a]][budget][run];
                    row.push_back(value);
                    samples[a].push_back(value);
                }
                scores.push_back(std::move(row));
            }
            const auto report = stats::compare_against_best(scores, samples, names);
            best_by_budget[evals] = report.best;
            for (const auto& e : report.entries) {
                ranks_csv += csv_line({problem, evals, e.algorithm, format_number(e.mean_rank), format_number(e.p_value),
                                       format_number(e.adjusted_p), e.indistinguishable ? "true" : "false",
                                       e.algorithm == report.best ? "true" : "false"});
            }
        }

        // Strategy proportions over final populations, pooled and per method.
        std::map<std::string, std::pair<std::vector<rap::Phenotype>, std::vector<metrics::ObjectivePoint>>> pools;
        for (const auto& r : records) {
            for (const auto& m : r.trace.final_population) {
                for (const auto& key : {std::string("ALL"), method_label(r.algorithm, r.init)}) {
                    auto& [phenotypes, points] = pools[key];
                    phenotypes.push_back(m.phenotype);
                    points.push_back({m.evaluation.cost, m.evaluation.availability});
                }
            }
        }
        // Feasible subset for the Pareto scope.
        std::map<std::string, std::pair<std::vector<rap::Phenotype>, std::vector<metrics::ObjectivePoint>>> feasible;
        for (const auto& r : records) {
            for (const auto& m : r.trace.final_population) {
                if (!m.evaluation.feasible()) continue;
                for (const auto& key : {std::string("ALL"), method_label(r.algorithm, r.init)}) {
                    auto& [phenotypes, points] = feasible[key];
                    phenotypes.push_back(m.phenotype);
                    points.push_back({m.evaluation.cost, m.evaluation.availability});
                }
            }
        }
        auto shares_line = [&](const std::string& method, const char* scope, std::size_t count,
                               const metrics::StrategyShares& s) {
            prop_csv += csv_line({problem, method, scope, std::to_string(count), format_number(s[0]), format_number(s[1]),
                                  format_number(s[2]), format_number(s[3])});
        };
        for (const auto& [method, pooled] : pools) {
            shares_line(method, "all", pooled.first.size(), metrics::strategy_proportions(pooled.first));
            auto it = feasible.find(method);
            if (it == feasible.end()) {
                summary.warnings.push_back("no feasible final solutions for " + problem + " " + method);
                continue;
            }
            const auto& [phenotypes, points] = it->second;
            shares_line(method, "pareto", metrics::pareto_filter_indices(points).size(),
                        metrics::strategy_proportions(phenotypes, points, metrics::ProportionScope::pareto_only));
        }

        problems.push_back({{"problem", problem},
                            {"records", records.size()},
                            {"methods", names},
                            {"reference", {{"cost", ref.cost}, {"availability", ref.availability}}},
                            {"hv_best", hv_best},
                            {"best_by_budget", best_by_budget}});
    }

    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "hv_runs.csv", hv_csv);
    write_file_atomic(out_dir / "convergence.csv", conv_csv);
    write_file_atomic(out_dir / "ranks.csv", ranks_csv);
    write_file_atomic(out_dir / "proportions.csv", prop_csv);
    json doc;
    doc["records"] = summary.records;
    doc["problems"] = std::move(problems);
    doc["warnings"] = summary.warnings;
    write_file_atomic(out_dir / "summary.json", doc.dump(2) + "\n");
    return summary;
}

std::string render_report(const fs::path& analysis_dir) {
    const json summary = parse_json(read_file(analysis_dir / "summary.json"), "analysis summary");
    std::ostringstream out;

    std::map<std::string, std::vector<std::vector<std::string>>> ranks;
    {
        std::istringstream in(read_file(analysis_dir / "ranks.csv"));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            auto cells = split_csv(line);
            if (cells.size() == 8) ranks[cells[0]].push_back(std::move(cells));
        }
    }
    std::map<std::string, std::vector<std::vector<std::string>>> proportions;
    {
        std::istringstream in(read_file(analysis_dir / "proportions.csv"));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            auto cells = split_csv(line);
            if (cells.size() == 8) proportions[cells[0]].push_back(std::move(cells));
        }
    }

    out << "records analyzed: " << summary.at("records").get<int>() << "\n";
    for (const auto& p : summary.at("problems")) {
        const auto problem = p.at("problem").get<std::string>();
        out << "\n== " << problem << " ==\n";
        out << "reference point: cost " << format_number(p.at("reference").at("cost").get<double>()) << ", availability "
            << format_number(p.at("reference").at("availability").get<double>()) << "\n";
        out << "best-found HV: " << format_number(p.at("hv_best").get<double>()) << "\n";

        const auto& rows = ranks[problem];
        std::string last_budget;
        for (const auto& row : rows) last_budget = row[1];
        if (!last_budget.empty()) {
            out << "ranking at " << last_budget << " evaluations:\n";
            std::vector<const std::vector<std::string>*> final_rows;
            for (const auto& row : rows) {
                if (row[1] == last_budget) final_rows.push_back(&row);
            }
            std::stable_sort(final_rows.begin(), final_rows.end(),
                             [](auto* a, auto* b) { return std::stod((*a)[3]) < std::stod((*b)[3]); });
            for (const auto* row : final_rows) {
                out << "  " << std::left << std::setw(14) << (*row)[2] << " rank " << (*row)[3];
                if ((*row)[7] == "true") {
                    out << "  (best)";
                } else {
                    out << "  p_holm " << (*row)[5] << ((*row)[6] == "true" ? "  indistinguishable" : "  worse");
                }
                out << "\n";
            }
        }
        out << "strategy proportions (cold / warm / mixed / hot):\n";
        for (const auto& row : proportions[problem]) {
            out << "  " << std::left << std::setw(14) << row[1] << std::setw(7) << row[2];
            for (int c = 4; c < 8; ++c) {
                out << " " << std::fixed << std::setprecision(2) << std::stod(row[c]);
            }
            out.unsetf(std::ios::fixed);
            out << "\n";
        }
    }
    for (const auto& w : summary.at("warnings")) out << "warning: " << w.get<std::string>() << "\n";
    return out.str();
}

}  // namespace rapbench::harness
