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

/* C interface to rapbench. Every function returns a status code; on
 * failure rapb_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with rapb_string_free. */

#ifndef RAPBENCH_RAPBENCH_H_
#define RAPBENCH_RAPBENCH_H_

#include <stddef.h>

#if defined(_WIN32)
#define RAPB_API __declspec(dllexport)
#else
#define RAPB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rapb_status {
    RAPB_OK = 0,
    RAPB_E_INVALID_ARGUMENT = 1,
    RAPB_E_INVALID_CONFIGURATION = 2,
    RAPB_E_INVALID_PARAMETERS = 3,
    RAPB_E_NUMERICAL_FAILURE = 4,
    RAPB_E_IO = 5,
    RAPB_E_PARSE = 6,
    RAPB_E_TRANSCRIPTION = 7,
    RAPB_E_UNDEFINED_METRIC = 8,
    RAPB_E_INTERNAL = 99
} rapb_status;

/* Strategy codes, shared with the binary encoding. */
enum { RAPB_COLD = 0, RAPB_WARM = 1, RAPB_MIXED = 2, RAPB_HOT = 3 };

typedef struct rapb_instance rapb_instance;

typedef struct rapb_evaluation {
    double cost;
    double availability;
    double weight;
    double violation; /* max(0, weight - W) */
    int feasible;
} rapb_evaluation;

RAPB_API const char* rapb_version(void);
RAPB_API const char* rapb_status_string(rapb_status status);
/* Message of the most recent failure on this thread, "" if none. */
RAPB_API const char* rapb_last_error(void);
RAPB_API void rapb_string_free(char* s);

RAPB_API rapb_status rapb_instance_load(const char* path, rapb_instance** out);
RAPB_API rapb_status rapb_instance_from_json(const char* json, rapb_instance** out);
/* case_id is "CS1".."CS6" (case-insensitive). */
RAPB_API rapb_status rapb_instance_bundled(const char* case_id, double weight_limit, rapb_instance** out);
RAPB_API void rapb_instance_free(rapb_instance* inst);
RAPB_API rapb_status rapb_instance_subsystems(const rapb_instance* inst, size_t* out);
RAPB_API rapb_status rapb_instance_problem_id(const rapb_instance* inst, char** out);
RAPB_API rapb_status rapb_instance_json(const rapb_instance* inst, char** out);

/* Spares per subsystem in [0,255] and strategy codes, both of length m. */
RAPB_API rapb_status rapb_evaluate(const rapb_instance* inst, const int* spares, const int* strategies, size_t m,
                                   rapb_evaluation* out);
RAPB_API rapb_status rapb_subsystem_availability(const rapb_instance* inst, size_t subsystem, int spares,
                                                 int strategy, double* out);

/* Runs one optimizer. optimizer_json holds the optimizer settings (see the
 * README); the result is a run record in JSON. */
RAPB_API rapb_status rapb_solve(const rapb_instance* inst, const char* optimizer_json, char** record_json);

/* Benchmark matrix from a JSON config file; writes records into the
 * configured output directory and returns a JSON summary. */
RAPB_API rapb_status rapb_bench(const char* config_path, const char* output_dir_override, char** summary_json);
RAPB_API rapb_status rapb_analyze(const char* bench_dir, const char* out_dir, char** summary_json);
RAPB_API rapb_status rapb_report(const char* analysis_dir, char** text);

#ifdef __cplusplus
}
#endif

#endif /* RAPBENCH_RAPBENCH_H_ */
