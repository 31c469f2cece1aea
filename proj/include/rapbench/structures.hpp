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

/// @file structures.hpp
/// System availability of the six case-study topologies as closed-form
/// multilinear polynomials, plus a hypercube enumeration of the same
/// structure functions.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace rapbench::structures {

enum class CaseStudy : int { cs1 = 1, cs2, cs3, cs4, cs5, cs6 };

inline constexpr std::array<CaseStudy, 6> kAllCases = {CaseStudy::cs1, CaseStudy::cs2, CaseStudy::cs3,
                                                      CaseStudy::cs4, CaseStudy::cs5, CaseStudy::cs6};

/// Number of subsystems m: 5, 5, 5, 10, 10, 15.
int subsystem_count(CaseStudy c) noexcept;

std::string_view case_name(CaseStudy c) noexcept;  // "CS1".."CS6"
std::optional<CaseStudy> parse_case(std::string_view text) noexcept;

/// Closed-form system availability from per-subsystem availabilities.
/// Throws invalid_argument if `availability.size() != subsystem_count(c)`.
double system_availability(CaseStudy c, std::span<const double> availability);

/// Structure function at a hypercube vertex (1 = subsystem up). Evaluates
/// the polynomial at the vertex; throws transcription_error when the value
/// is not within 1e-9 of 0 or 1.
bool structure_predicate(CaseStudy c, std::span<const std::uint8_t> up);

/// Same predicate with the vertex packed as a bit mask (bit i = subsystem i+1).
bool structure_predicate(CaseStudy c, std::uint32_t up_mask);

/// Sum over all 2^m vertices of phi(x) * prod A_i^x_i (1-A_i)^(1-x_i).
double enumeration_availability(CaseStudy c, std::span<const double> availability);

}  // namespace rapbench::structures
