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

#include "rapbench/structures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "rapbench/error.hpp"

namespace rapbench::structures {

namespace {

// 1-based views so each polynomial reads like its expanded form.
struct Terms {
    std::array<double, 16> a{};
    std::array<double, 16> u{};

    explicit Terms(std::span<const double> availability) {
        for (std::size_t i = 0; i < availability.size(); ++i) {
            a[i + 1] = availability[i];
            u[i + 1] = 1.0 - availability[i];
        }
    }
};

double series(const Terms& t, int m) {
    double p = 1.0;
    for (int i = 1; i <= m; ++i) p *= t.a[i];
    return p;
}

double series_parallel(const Terms& t) {
    const auto& A = t.a;
    return 1 - (1 - A[1] * A[2]) * (1 - (A[3] + A[4] - A[3] * A[4]) * A[5]);
}

// Bridge with minimal paths {1,2}, {3,4}, {1,4,5}, {2,3,5}.
// The widely circulated expansion lists A2A4A5 for the last path; that term
// evaluates to 2 at x = (1,1,0,1,1), so it cannot be a structure function.
double bridge(const Terms& t) {
    const auto& A = t.a;
    return A[1] * A[2] + A[3] * A[4] + A[1] * A[4] * A[5] + A[2] * A[3] * A[5] -
           A[1] * A[2] * A[3] * A[4] - A[1] * A[2] * A[3] * A[5] - A[1] * A[2] * A[4] * A[5] -
           A[1] * A[3] * A[4] * A[5] - A[2] * A[3] * A[4] * A[5] +
           2 * A[1] * A[2] * A[3] * A[4] * A[5];
}

double complex10(const Terms& t) {
    const auto& A = t.a;
    const auto& U = t.u;
    return A[1] * A[2] * A[3] * A[4] +
           A[1] * A[2] * A[6] * A[10] * (U[3] + A[3] * U[4]) +
           A[1] * A[5] * A[9] * A[10] * (U[2] + A[2] * U[3] * U[6] + A[2] * A[3] * U[4] * U[6]) +
           A[7] * A[8] * A[9] * A[10] *
               (U[1] + A[1] * U[2] * U[5] + A[1] * A[2] * U[3] * U[5] * U[6] +
                A[1] * A[2] * A[3] * U[5] * U[6] * U[4]) +
           A[2] * A[3] * A[4] * A[5] * A[7] * A[8] * U[1] * (U[9] + A[9] * U[10]) +
           U[1] * A[3] * A[4] * A[6] * A[7] * A[8] * A[9] * U[10] * (U[2] + A[2] * U[5]) +
           A[1] * U[2] * A[3] * A[4] * A[6] * A[7] * A[8] * A[9] * U[10] +
           A[1] * U[2] * A[3] * A[4] * A[5] * A[6] * A[9] * U[10] * (U[7] + A[7] * U[8]) +
           U[1] * A[2] * A[5] * A[6] * A[7] * A[8] * U[9] * A[10] * (U[3] + A[3] * U[4]);
}

// Sixth term: the A1A2A3A4A8A13A14A15 factor multiplies the whole
// (U5 + A5U6)(...) product. Attached only to the inner A9A10 branch, the
// expansion equals 1 at the all-down vertex.
double complex15(const Terms& t) {
    const auto& A = t.a;
    const auto& U = t.u;
    const double u1_or_a1u2 = U[1] + A[1] * U[2];
    const double u3_or_a3u4 = U[3] + A[3] * U[4];
    const double tail13 = U[13] + A[13] * U[14] + A[13] * A[14] * U[15];
    return A[1] * A[2] * A[3] * A[4] * A[5] * A[6] +
           A[9] * A[10] * A[11] * A[12] * A[13] * A[14] * A[15] *
               (U[1] + A[1] * U[2] + A[1] * A[2] * U[3] + A[1] * A[2] * A[3] * U[4] +
                A[1] * A[2] * A[3] * A[4] * U[5] + A[1] * A[2] * A[3] * A[4] * A[5] * U[6]) +
           A[3] * A[4] * A[5] * A[6] * A[7] * A[9] * A[10] *
               (U[11] + A[11] * U[12] + A[11] * A[12] * U[13] + A[11] * A[12] * A[13] * U[14] +
                A[11] * A[12] * A[13] * A[14] * U[15]) *
               u1_or_a1u2 +
           (u1_or_a1u2 * (U[3] + A[3] * U[4] + A[3] * A[4] * U[7]) + A[1] * A[2] * U[7] * u3_or_a3u4) *
               tail13 * A[5] * A[6] * A[8] * A[9] * A[10] * A[11] * A[12] +
           A[1] * A[2] * A[5] * A[6] * A[7] * A[8] * A[11] * A[12] * (A[9] * A[10] + U[9] + A[9] * U[10]) *
               u3_or_a3u4 * tail13 +
           (U[5] + A[5] * U[6]) *
               ((U[7] + A[7] * U[11] + A[7] * A[11] * U[12]) * (U[9] + A[9] * U[10]) +
                A[9] * A[10] * (U[11] + A[11] * U[12])) *
               A[1] * A[2] * A[3] * A[4] * A[8] * A[13] * A[14] * A[15] +
           A[1] * A[2] * A[7] * A[11] * A[12] * A[13] * A[14] * A[15] * (U[9] + A[9] * U[10]) *
               (U[3] + A[3] * U[4] + A[3] * A[4] * U[5] + A[3] * A[4] * A[5] * U[6]) +
           A[3] * A[4] * A[7] * A[8] * A[9] * A[10] * A[13] * A[14] * A[15] * u1_or_a1u2 *
               (U[11] + A[11] * U[12]) * (U[5] + A[5] * U[6]);
}

double evaluate_polynomial(CaseStudy c, std::span<const double> availability) {
    const Terms t(availability);
    switch (c) {
        case CaseStudy::cs1: return series(t, 5);
        case CaseStudy::cs2: return series_parallel(t);
        case CaseStudy::cs3: return bridge(t);
        case CaseStudy::cs4: return series(t, 10);
        case CaseStudy::cs5: return complex10(t);
        case CaseStudy::cs6: return complex15(t);
    }
    fail(ErrorCode::invalid_argument, "unknown case study");
}

void require_length(CaseStudy c, std::size_t size) {
    if (static_cast<int>(size) != subsystem_count(c)) {
        std::ostringstream msg;
        msg << case_name(c) << " expects " << subsystem_count(c) << " subsystems, got " << size;
        fail(ErrorCode::invalid_argument, msg.str());
    }
}

}  // namespace

int subsystem_count(CaseStudy c) noexcept {
    switch (c) {
        case CaseStudy::cs1:
        case CaseStudy::cs2:
        case CaseStudy::cs3: return 5;
        case CaseStudy::cs4:
        case CaseStudy::cs5: return 10;
        case CaseStudy::cs6: return 15;
    }
    return 0;
}

std::string_view case_name(CaseStudy c) noexcept {
    static constexpr std::array<std::string_view, 6> names = {"CS1", "CS2", "CS3", "CS4", "CS5", "CS6"};
    return names[static_cast<int>(c) - 1];
}

std::optional<CaseStudy> parse_case(std::string_view text) noexcept {
    for (CaseStudy c : kAllCases) {
        const auto name = case_name(c);
        if (text.size() != name.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char ch = (text[i] >= 'a' && text[i] <= 'z') ? static_cast<char>(text[i] - 32) : text[i];
            same = same && ch == name[i];
        }
        if (same) return c;
    }
    return std::nullopt;
}

double system_availability(CaseStudy c, std::span<const double> availability) {
    require_length(c, availability.size());
    for (double a : availability) {
        if (!(a >= 0.0 && a <= 1.0)) fail(ErrorCode::invalid_argument, "subsystem availability outside [0,1]");
    }
    return std::clamp(evaluate_polynomial(c, availability), 0.0, 1.0);
}

bool structure_predicate(CaseStudy c, std::uint32_t up_mask) {
    const int m = subsystem_count(c);
    std::array<double, 15> vertex{};
    for (int i = 0; i < m; ++i) vertex[i] = (up_mask >> i) & 1u ? 1.0 : 0.0;
    const double value = evaluate_polynomial(c, std::span<const double>(vertex.data(), m));
    if (std::abs(value) <= 1e-9) return false;
    if (std::abs(value - 1.0) <= 1e-9) return true;
    std::ostringstream msg;
    msg << case_name(c) << " polynomial evaluates to " << value << " at vertex mask 0x" << std::hex << up_mask;
    fail(ErrorCode::transcription_error, msg.str());
}

bool structure_predicate(CaseStudy c, std::span<const std::uint8_t> up) {
    require_length(c, up.size());
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < up.size(); ++i) {
        if (up[i] > 1) fail(ErrorCode::invalid_argument, "vertex coordinates must be 0 or 1");
        mask |= static_cast<std::uint32_t>(up[i]) << i;
    }
    return structure_predicate(c, mask);
}

double enumeration_availability(CaseStudy c, std::span<const double> availability) {
    require_length(c, availability.size());
    const int m = subsystem_count(c);
    double total = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (!structure_predicate(c, mask)) continue;
        double p = 1.0;
        for (int i = 0; i < m; ++i) p *= (mask >> i) & 1u ? availability[i] : 1.0 - availability[i];
        total += p;
    }
    return total;
}

}  // namespace rapbench::structures
