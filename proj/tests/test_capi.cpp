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

// Exercises the shared library through its C header only.

#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <string>

#include "rapbench/rapbench.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    rapb_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("bundled instance through the C API", "[capi]") {
    rapb_instance* inst = nullptr;
    REQUIRE(rapb_instance_bundled("cs1", 120, &inst) == RAPB_OK);
    size_t m = 0;
    REQUIRE(rapb_instance_subsystems(inst, &m) == RAPB_OK);
    CHECK(m == 5);
    char* id = nullptr;
    REQUIRE(rapb_instance_problem_id(inst, &id) == RAPB_OK);
    CHECK(take(id) == "CS1_W120");

    const int spares[5] = {0, 0, 0, 0, 0};
    const int strategies[5] = {RAPB_HOT, RAPB_HOT, RAPB_HOT, RAPB_HOT, RAPB_HOT};
    rapb_evaluation ev{};
    REQUIRE(rapb_evaluate(inst, spares, strategies, 5, &ev) == RAPB_OK);
    CHECK_THAT(ev.cost, Catch::Matchers::WithinAbs(36.84, 1e-9));
    CHECK_THAT(ev.weight, Catch::Matchers::WithinAbs(13.23, 1e-9));
    CHECK(ev.feasible == 1);
    CHECK(ev.violation == 0.0);

    double a = 0;
    REQUIRE(rapb_subsystem_availability(inst, 1, 2, RAPB_COLD, &a) == RAPB_OK);
    CHECK(a > 0.0);
    CHECK(a < 1.0);

    char* text = nullptr;
    REQUIRE(rapb_instance_json(inst, &text) == RAPB_OK);
    const std::string json = take(text);
    rapb_instance* copy = nullptr;
    REQUIRE(rapb_instance_from_json(json.c_str(), &copy) == RAPB_OK);
    rapb_evaluation ev2{};
    REQUIRE(rapb_evaluate(copy, spares, strategies, 5, &ev2) == RAPB_OK);
    CHECK(ev2.availability == ev.availability);
    rapb_instance_free(copy);
    rapb_instance_free(inst);
}

TEST_CASE("C API errors carry codes and messages", "[capi]") {
    rapb_instance* inst = nullptr;
    CHECK(rapb_instance_bundled("CS1", 121, &inst) == RAPB_E_INVALID_ARGUMENT);
    CHECK(std::strlen(rapb_last_error()) > 0);
    CHECK(rapb_instance_bundled("CS9", 120, &inst) == RAPB_E_INVALID_ARGUMENT);
    CHECK(rapb_instance_from_json("{oops", &inst) == RAPB_E_PARSE);
    CHECK(rapb_instance_load("/nonexistent/instance.json", &inst) == RAPB_E_IO);

    REQUIRE(rapb_instance_bundled("CS2", 100, &inst) == RAPB_OK);
    const int spares[5] = {0, 300, 0, 0, 0};
    const int strategies[5] = {0, 0, 0, 0, 0};
    rapb_evaluation ev{};
    CHECK(rapb_evaluate(inst, spares, strategies, 5, &ev) == RAPB_E_INVALID_ARGUMENT);
    CHECK(rapb_evaluate(inst, spares, strategies, 4, &ev) == RAPB_E_INVALID_ARGUMENT);

    char* record = nullptr;
    CHECK(rapb_solve(inst, R"({"algorithm": "mopso", "init": "sbi", "pop_size": 10, "budget": 100})", &record) ==
          RAPB_E_INVALID_CONFIGURATION);
    CHECK(record == nullptr);
    REQUIRE(rapb_solve(inst, R"({"algorithm": "spea2", "pop_size": 10, "budget": 100, "seed": 3})", &record) ==
            RAPB_OK);
    CHECK(take(record).find("\"evaluations\": 100") != std::string::npos);
    rapb_instance_free(inst);
    CHECK(std::strcmp(rapb_status_string(RAPB_OK), "ok") == 0);
    CHECK(std::strlen(rapb_version()) > 0);
}
