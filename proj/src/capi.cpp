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

#include "rapbench/rapbench.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "rapbench/error.hpp"
#include "rapbench/harness.hpp"
#include "rapbench/moea.hpp"
#include "rapbench/rap.hpp"

struct rapb_instance {
    explicit rapb_instance(rapbench::rap::InstanceSpec spec) : evaluator(std::move(spec)) {}
    rapbench::rap::Evaluator evaluator;
};

namespace {

thread_local std::string g_last_error;

rapb_status set_error(rapb_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `body` and converts any exception into a status code.
template <typename Body>
rapb_status guarded(Body&& body) {
    try {
        body();
        g_last_error.clear();
        return RAPB_OK;
    } catch (const rapbench::Error& e) {
        return set_error(static_cast<rapb_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return set_error(RAPB_E_IO, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(RAPB_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(RAPB_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(RAPB_E_INTERNAL, "unknown failure");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

void require(bool condition, const char* message) {
    if (!condition) rapbench::fail(rapbench::ErrorCode::invalid_argument, message);
}

}  // namespace

extern "C" {

const char* rapb_version(void) { return "0.1.0"; }

const char* rapb_status_string(rapb_status status) {
    switch (status) {
        case RAPB_OK: return "ok";
        case RAPB_E_INVALID_ARGUMENT: return "invalid argument";
        case RAPB_E_INVALID_CONFIGURATION: return "invalid configuration";
        case RAPB_E_INVALID_PARAMETERS: return "invalid parameters";
        case RAPB_E_NUMERICAL_FAILURE: return "numerical failure";
        case RAPB_E_IO: return "i/o error";
        case RAPB_E_PARSE: return "parse error";
        case RAPB_E_TRANSCRIPTION: return "transcription error";
        case RAPB_E_UNDEFINED_METRIC: return "undefined metric";
        case RAPB_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* rapb_last_error(void) { return g_last_error.c_str(); }

void rapb_string_free(char* s) { std::free(s); }

rapb_status rapb_instance_load(const char* path, rapb_instance** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new rapb_instance(rapbench::rap::load_instance(path));
    });
}

rapb_status rapb_instance_from_json(const char* json, rapb_instance** out) {
    return guarded([&] {
        require(json && out, "null argument");
        *out = new rapb_instance(rapbench::rap::parse_instance(json));
    });
}

rapb_status rapb_instance_bundled(const char* case_id, double weight_limit, rapb_instance** out) {
    return guarded([&] {
        require(case_id && out, "null argument");
        const auto c = rapbench::structures::parse_case(case_id);
        if (!c) rapbench::fail(rapbench::ErrorCode::invalid_argument, std::string("unknown case '") + case_id + "'");
        *out = new rapb_instance(rapbench::rap::bundled_instance(*c, weight_limit));
    });
}

void rapb_instance_free(rapb_instance* inst) { delete inst; }

rapb_status rapb_instance_subsystems(const rapb_instance* inst, size_t* out) {
    return guarded([&] {
        require(inst && out, "null argument");
        *out = static_cast<size_t>(inst->evaluator.instance().m());
    });
}

rapb_status rapb_instance_problem_id(const rapb_instance* inst, char** out) {
    return guarded([&] {
        require(inst && out, "null argument");
        *out = dup_string(rapbench::rap::problem_id(inst->evaluator.instance()));
    });
}

rapb_status rapb_instance_json(const rapb_instance* inst, char** out) {
    return guarded([&] {
        require(inst && out, "null argument");
        *out = dup_string(rapbench::rap::instance_to_json(inst->evaluator.instance()));
    });
}

rapb_status rapb_evaluate(const rapb_instance* inst, const int* spares, const int* strategies, size_t m,
                          rapb_evaluation* out) {
    return guarded([&] {
        require(inst && spares && strategies && out, "null argument");
        rapbench::rap::Phenotype p;
        p.spares.assign(spares, spares + m);
        for (size_t i = 0; i < m; ++i) p.strategies.push_back(rapbench::ctmc::strategy_from_code(strategies[i]));
        const auto e = inst->evaluator.evaluate(p);
        *out = {e.cost, e.availability, e.weight, e.violation, e.feasible() ? 1 : 0};
    });
}

rapb_status rapb_subsystem_availability(const rapb_instance* inst, size_t subsystem, int spares, int strategy,
                                        double* out) {
    return guarded([&] {
        require(inst && out, "null argument");
        require(subsystem < static_cast<size_t>(inst->evaluator.instance().m()), "subsystem index out of range");
        *out = inst->evaluator.subsystem_availability(static_cast<int>(subsystem), spares,
                                                      rapbench::ctmc::strategy_from_code(strategy));
    });
}

rapb_status rapb_solve(const rapb_instance* inst, const char* optimizer_json, char** record_json) {
    return guarded([&] {
        require(inst && optimizer_json && record_json, "null argument");
        const auto cfg = rapbench::harness::parse_optimizer_config(optimizer_json);
        cfg.validate();
        rapbench::harness::RunRecord record;
        record.instance = inst->evaluator.instance();
        record.problem = rapbench::rap::problem_id(record.instance);
        record.algorithm = std::string(rapbench::moea::algorithm_name(cfg.algorithm));
        record.init = std::string(rapbench::moea::init_name(cfg.init));
        record.seed = cfg.seed;
        record.trace = rapbench::moea::run(inst->evaluator, cfg);
        *record_json = dup_string(rapbench::harness::record_to_json(record));
    });
}

rapb_status rapb_bench(const char* config_path, const char* output_dir_override, char** summary_json) {
    return guarded([&] {
        require(config_path && summary_json, "null argument");
        auto config = rapbench::harness::load_bench_config(config_path);
        if (output_dir_override && *output_dir_override) config.output_dir = output_dir_override;
        const auto s = rapbench::harness::run_bench(config);
        nlohmann::ordered_json j{{"output_dir", config.output_dir.string()},
                                 {"planned", s.planned},
                                 {"executed", s.executed},
                                 {"skipped_existing", s.skipped_existing},
                                 {"not_applicable", s.not_applicable},
                                 {"failed", s.failed}};
        *summary_json = dup_string(j.dump(2));
    });
}

rapb_status rapb_analyze(const char* bench_dir, const char* out_dir, char** summary_json) {
    return guarded([&] {
        require(bench_dir && out_dir && summary_json, "null argument");
        const auto s = rapbench::harness::analyze(bench_dir, out_dir);
        nlohmann::ordered_json j{{"records", s.records}, {"problems", s.problems}, {"warnings", s.warnings}};
        *summary_json = dup_string(j.dump(2));
    });
}

rapb_status rapb_report(const char* analysis_dir, char** text) {
    return guarded([&] {
        require(analysis_dir && text, "null argument");
        *text = dup_string(rapbench::harness::render_report(analysis_dir));
    });
}

}  // extern "C"
