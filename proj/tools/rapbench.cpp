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

// Command-line front end. Talks to the library only through rapbench.h.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rapbench/rapbench.h"

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(rapb_status status, const char* what) {
    if (status != RAPB_OK) {
        throw RuntimeError(std::string(what) + ": " + rapb_status_string(status) + ": " + rapb_last_error());
    }
}

struct InstanceDeleter {
    void operator()(rapb_instance* p) const { rapb_instance_free(p); }
};
using InstancePtr = std::unique_ptr<rapb_instance, InstanceDeleter>;

std::string take(char* s) {
    std::string out = s ? s : "";
    rapb_string_free(s);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + out_path);
    out << text;
    if (!out) throw RuntimeError("short write to " + out_path);
}

struct InstanceArgs {
    std::string file;
    std::string case_id;
    std::optional<double> weight_limit;

    void attach(CLI::App* cmd) {
        cmd->add_option("-i,--instance", file, "instance JSON file");
        cmd->add_option("--case", case_id, "bundled case study, CS1..CS6");
        cmd->add_option("-W,--weight-limit", weight_limit, "weight limit of the bundled instance");
    }

    InstancePtr open() const {
        rapb_instance* raw = nullptr;
        if (!file.empty()) {
            if (!case_id.empty()) throw UsageError("--instance and --case are mutually exclusive");
            check(rapb_instance_load(file.c_str(), &raw), "loading instance");
        } else {
            if (case_id.empty() || !weight_limit) throw UsageError("give --instance FILE or --case CSn -W LIMIT");
            check(rapb_instance_bundled(case_id.c_str(), *weight_limit, &raw), "loading bundled instance");
        }
        return InstancePtr(raw);
    }
};

int parse_strategy(const nlohmann::json& v) {
    if (v.is_number_integer()) {
        const int code = v.get<int>();
        if (code < 0 || code > 3) throw UsageError("strategy code must be 0..3");
        return code;
    }
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        static const char* names[] = {"cold", "warm", "mixed", "hot"};
        for (int c = 0; c < 4; ++c) {
            if (name == names[c] || name == std::to_string(c)) return c;
        }
        throw UsageError("unknown strategy '" + name + "'");
    }
    throw UsageError("strategy must be a code or a name");
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

int cmd_evaluate(const InstanceArgs& inst_args, const std::string& phenotype_file, const std::string& spares_text,
                 const std::string& strategies_text, bool per_subsystem) {
    std::vector<int> spares;
    std::vector<int> strategies;
    if (!phenotype_file.empty()) {
        if (!spares_text.empty() || !strategies_text.empty()) {
            throw UsageError("--phenotype excludes --spares/--strategies");
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(slurp(phenotype_file));
            for (const auto& s : doc.at("spares")) spares.push_back(s.get<int>());
            for (const auto& s : doc.at("strategies")) strategies.push_back(parse_strategy(s));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed phenotype file: " + std::string(e.what()));
        }
    } else {
        if (spares_text.empty() || strategies_text.empty()) {
            throw UsageError("give --phenotype FILE or both --spares and --strategies");
        }
        for (const auto& s : split(spares_text)) {
            try {
                std::size_t used = 0;
                spares.push_back(std::stoi(s, &used));
                if (used != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw UsageError("bad spare count '" + s + "'");
            }
        }
        for (const auto& s : split(strategies_text)) strategies.push_back(parse_strategy(nlohmann::json(s)));
    }
    for (int s : spares) {
        if (s < 0 || s > 255) throw UsageError("spare counts must lie in [0, 255]");
    }
    if (spares.size() != strategies.size()) throw UsageError("spares and strategies differ in length");

    const auto inst = inst_args.open();
    std::size_t m = 0;
    check(rapb_instance_subsystems(inst.get(), &m), "reading instance");
    if (spares.size() != m) {
        throw UsageError("phenotype has " + std::to_string(spares.size()) + " subsystems, instance has " +
                         std::to_string(m));
    }
    rapb_evaluation e{};
    check(rapb_evaluate(inst.get(), spares.data(), strategies.data(), m, &e), "evaluating");

    nlohmann::ordered_json out;
    char* id = nullptr;
    check(rapb_instance_problem_id(inst.get(), &id), "reading instance");
    out["problem"] = take(id);
    out["cost"] = e.cost;
    out["availability"] = e.availability;
    out["weight"] = e.weight;
    out["violation"] = e.violation;
    out["feasible"] = e.feasible != 0;
    if (per_subsystem) {
        auto& subs = out["subsystem_availability"] = nlohmann::json::array();
        for (std::size_t i = 0; i < m; ++i) {
            double a = 0;
            check(rapb_subsystem_availability(inst.get(), i, spares[i], strategies[i], &a), "evaluating subsystem");
            subs.push_back(a);
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SolveArgs {
    std::string config_file;
    std::string algorithm = "nsga2";
    std::string init;
    std::optional<int> pop_size;
    std::optional<long long> budget;
    std::optional<unsigned long long> seed;
    std::string out;
};

int cmd_solve(const InstanceArgs& inst_args, const SolveArgs& args) {
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    if (!args.config_file.empty()) {
        try {
            cfg = nlohmann::ordered_json::parse(slurp(args.config_file));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed optimizer config: " + std::string(e.what()));
        }
    }
    if (!cfg.contains("algorithm") || args.algorithm != "nsga2") cfg["algorithm"] = args.algorithm;
    if (!args.init.empty()) cfg["init"] = args.init;
    if (!cfg.contains("init")) cfg["init"] = args.algorithm == "mopso" ? "ri" : "sbi";
    if (args.pop_size) cfg["pop_size"] = *args.pop_size;
    if (args.budget) cfg["budget"] = *args.budget;
    if (args.seed) cfg["seed"] = *args.seed;

    const auto inst = inst_args.open();
    char* record = nullptr;
    check(rapb_solve(inst.get(), cfg.dump().c_str(), &record), "solving");
    const std::string text = take(record);
    if (args.out.empty()) {
        std::cout << text;
        return 0;
    }
    emit(text, args.out);
    const auto doc = nlohmann::json::parse(text);
    const auto& front = doc.at("checkpoints").back().at("front");
    std::cerr << "wrote " << args.out << ": " << doc.at("evaluations").get<long long>() << " evaluations, "
              << front.size() << " nondominated feasible solutions\n";
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Redundancy allocation benchmark: availability models, optimizers and analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rapb_version()));

    InstanceArgs eval_inst;
    std::string phenotype_file, spares_text, strategies_text;
    bool per_subsystem = false;
    auto* evaluate = app.add_subcommand("evaluate", "Cost, weight and availability of one allocation");
    eval_inst.attach(evaluate);
    evaluate->add_option("-p,--phenotype", phenotype_file, "JSON file with spares and strategies arrays");
    evaluate->add_option("--spares", spares_text, "comma-separated spare counts");
    evaluate->add_option("--strategies", strategies_text, "comma-separated strategies (cold,warm,mixed,hot or 0..3)");
    evaluate->add_flag("--per-subsystem", per_subsystem, "also print subsystem availabilities");

    InstanceArgs solve_inst;
    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Run one optimizer on one instance");
    solve_inst.attach(solve);
    solve->add_option("-c,--config", solve_args.config_file, "optimizer settings JSON");
    solve->add_option("-a,--algorithm", solve_args.algorithm, "nsga2, spea2 or mopso")
        ->check(CLI::IsMember({"nsga2", "spea2", "mopso"}));
    solve->add_option("--init", solve_args.init, "ri or sbi")->check(CLI::IsMember({"ri", "sbi"}));
    solve->add_option("-n,--pop-size", solve_args.pop_size, "population size");
    solve->add_option("-b,--budget", solve_args.budget, "evaluation budget");
    solve->add_option("-s,--seed", solve_args.seed, "random seed");
    solve->add_option("-o,--out", solve_args.out, "write the run record here instead of stdout");

    std::string bench_config, bench_out;
    auto* bench = app.add_subcommand("bench", "Run a benchmark matrix (resumable)");
    bench->add_option("config", bench_config, "bench config JSON")->required();
    bench->add_option("-o,--out", bench_out, "output directory (overrides the config)");

    std::string analyze_in, analyze_out = "analysis";
    auto* analyze = app.add_subcommand("analyze", "Hypervolume, rankings and strategy shares from run records");
    analyze->add_option("bench_dir", analyze_in, "bench output directory")->required();
    analyze->add_option("-o,--out", analyze_out, "analysis output directory");

    std::string report_in, report_out;
    auto* report = app.add_subcommand("report", "Plain-text digest of an analysis directory");
    report->add_option("analysis_dir", report_in, "analysis directory")->required();
    report->add_option("-o,--out", report_out, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*evaluate) return cmd_evaluate(eval_inst, phenotype_file, spares_text, strategies_text, per_subsystem);
        if (*solve) return cmd_solve(solve_inst, solve_args);
        if (*bench) {
            char* summary = nullptr;
            check(rapb_bench(bench_config.c_str(), bench_out.c_str(), &summary), "bench");
            std::cout << take(summary) << "\n";
            return 0;
        }
        if (*analyze) {
            char* summary = nullptr;
            check(rapb_analyze(analyze_in.c_str(), analyze_out.c_str(), &summary), "analyze");
            std::cout << take(summary) << "\n";
            return 0;
        }
        if (*report) {
            char* text = nullptr;
            check(rapb_report(report_in.c_str(), &text), "report");
            emit(take(text), report_out);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
