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

/// @file harness.hpp
/// Benchmark orchestration: run matrices, run records on disk, and the
/// analysis that turns records into hypervolume, ranking and
/// strategy-proportion reports.
///
/// Output layout of a bench directory:
///   records/<problem>__<algorithm>__<init>__r<NN>.json   one per run
///   index.json                                           sorted record list
///   timings.csv                                          wall time per run
///
/// Output layout of an analysis directory:
///   hv_runs.csv, convergence.csv, ranks.csv, proportions.csv, summary.json
///
/// Everything except timings.csv is a pure function of the configuration
/// and master seed.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rapbench/moea.hpp"
#include "rapbench/rap.hpp"

namespace rapbench::harness {

struct BenchmarkConfig {
    std::uint64_t master_seed = 0;
    std::vector<rap::InstanceSpec> instances;
    /// Templates; init and seed are filled in per cell.
    std::vector<moea::OptimizerConfig> algorithms;
    std::vector<moea::Init> inits{moea::Init::ri, moea::Init::sbi};
    int runs_per_cell = 10;
    std::filesystem::path output_dir = "bench-out";
    int parallelism = 1;

    /// Throws invalid_configuration on empty lists or runs_per_cell < 1.
    void validate() const;
};

/// Parses the JSON bench configuration. Relative instance file paths and
/// output_dir resolve against `base_dir`.
BenchmarkConfig parse_bench_config(std::string_view json_text, const std::filesystem::path& base_dir);
BenchmarkConfig load_bench_config(const std::filesystem::path& path);

/// seed = mix(mix(mix(mix(master, fnv1a(problem)), fnv1a(algorithm)), fnv1a(init)), run_index)
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view problem, std::string_view algorithm,
                              std::string_view init, int run_index);

std::string optimizer_config_to_json(const moea::OptimizerConfig& cfg);
moea::OptimizerConfig parse_optimizer_config(std::string_view json_text);

struct RunRecord {
    std::string problem;
    rap::InstanceSpec instance;
    std::string algorithm;
    std::string init;
    int run_index = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error;
    moea::RunTrace trace;
    double wall_seconds = 0;  ///< not serialized into the record
};

std::string record_file_name(std::string_view problem, std::string_view algorithm, std::string_view init,
                             int run_index);
std::string record_to_json(const RunRecord& record);
RunRecord parse_record(std::string_view json_text);
RunRecord load_record(const std::filesystem::path& path);

/// Executes one cell and wraps failures into a record with ok = false.
RunRecord execute_run(const rap::Evaluator& evaluator, const moea::OptimizerConfig& cfg, std::string_view init,
                      int run_index, std::uint64_t seed);

struct BenchSummary {
    int planned = 0;
    int executed = 0;
    int skipped_existing = 0;
    int not_applicable = 0;  ///< SBI cells for the real-coded swarm
    int failed = 0;
};

/// Runs every (instance, algorithm, init, run) cell that has no record yet.
/// RAPBENCH_WORKERS overrides config.parallelism.
BenchSummary run_bench(const BenchmarkConfig& config);

struct AnalysisSummary {
    int records = 0;
    int problems = 0;
    std::vector<std::string> warnings;
};

/// Reads every record under `bench_dir` (or `bench_dir`/records) and writes
/// the analysis files into `out_dir`.
AnalysisSummary analyze(const std::filesystem::path& bench_dir, const std::filesystem::path& out_dir);

/// Plain-text digest of an analysis directory.
std::string render_report(const std::filesystem::path& analysis_dir);

/// Shortest decimal text that round-trips to the same binary64.
std::string format_number(double value);

void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace rapbench::harness
