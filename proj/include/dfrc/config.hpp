// SPDX-License-Identifier: Apache-2.0
//
// dfrc-latency: min-max latency power allocation for DFRC roadside units
// Copyright (C) 2026 dfrc-latency contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFRC_CONFIG_HPP
#define DFRC_CONFIG_HPP

#include "dfrc/allocate.hpp"
#include "dfrc/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dfrc
{

// Scenario and sweep files are YAML. Every physical quantity carries its unit
// in the key name; unknown keys are rejected. See configs/README.md for the schema.
// Errors are reported as ConfigError with the 1-based line of the offending node.

inline constexpr double default_payload_bits = 4000.0;

RoadScenario parse_scenario(const std::string &yaml_text);
RoadScenario load_scenario(const std::string &path);

enum class SweepAxis
{
    p_max,
    n_vehicles,
    n_tx,
    n_rx,
    n_veh_antennas
};

std::string_view to_string(SweepAxis axis);

struct SweepSpec
{
    SweepAxis axis = SweepAxis::p_max;
    std::vector<double> values;    // ascending
    std::vector<Policy> policies;
    std::size_t repetitions = 1;   // seeds per point: seed, seed + 1, ...
    double replicate_offset_m = 12.0; // n_vehicles beyond the configured list are copies shifted by this much

    void validate() const; // throws ConfigError
};

SweepSpec parse_sweep(const std::string &yaml_text);
SweepSpec load_sweep(const std::string &path);

} // namespace dfrc

#endif
