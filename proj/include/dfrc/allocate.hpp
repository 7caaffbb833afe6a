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

#ifndef DFRC_ALLOCATE_HPP
#define DFRC_ALLOCATE_HPP

#include "dfrc/latency.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfrc
{

enum class Policy
{
    epa,         // equal power split
    closed_form, // equal-payload closed form
    alg1,        // bisection on the common delay
    alg2,        // complementary pairwise power transfer
    oracle_grid  // exhaustive simplex grid, verification only
};

std::string_view to_string(Policy policy);
// Accepts the four dispatchable policies: epa, closed_form, alg1, alg2
Policy parse_policy(std::string_view name);

struct SolverParams
{
    double eps_delay = 1e-9;             // s, bisection bracket width at termination
    double eps_power = 1e-9;             // W, transfer step at termination
    std::optional<double> delta_p_init;  // W, defaults to p_max / (2K)
    std::size_t max_iters = 10'000'000;

    void validate() const;
};

struct Feasibility
{
    bool feasible = false;
    double total_floor_w = 0.0;
    double p_max_w = 0.0;
    double deficit_w = 0.0; // total_floor - p_max when infeasible, else 0
};

struct BracketStep
{
    double t_lower = 0.0;
    double t_upper = 0.0;
};

struct AllocationResult
{
    std::vector<double> powers; // W
    std::vector<double> delays; // s
    double max_delay = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
    Policy policy = Policy::epa;
    // Set when the returned powers do not satisfy every floor
    std::optional<std::string> infeasible_reason;
    // alg1 only: bracket before the loop, then after every iteration
    std::vector<BracketStep> bracket_trace;

    bool feasible() const { return !infeasible_reason.has_value(); }

    // Budget, floor and max-delay invariants. Throws ContractError on violation.
    void validate(std::span<const LinkCoefficients> links, double p_max) const;
};

Feasibility check_feasible(std::span<const LinkCoefficients> links, double p_max);

AllocationResult epa(std::span<const LinkCoefficients> links, double p_max);

// Requires equal a_coef. p_k = p_max / (b_k sum_j 1/b_j).
AllocationResult closed_form_equal_payload(std::span<const LinkCoefficients> links, double p_max);

AllocationResult alg1_delay_bisection(std::span<const LinkCoefficients> links, double p_max,
                                      const SolverParams &params = {});

AllocationResult alg2_complementary(std::span<const LinkCoefficients> links, double p_max,
                                    const SolverParams &params = {});

// Brute-force minimiser of the max delay over the floor-shifted power simplex.
// K <= 4, grid_steps >= 100.
AllocationResult oracle_grid_search(std::span<const LinkCoefficients> links, double p_max, std::size_t grid_steps);

AllocationResult allocate(Policy policy, std::span<const LinkCoefficients> links, double p_max,
                          const SolverParams &params = {});

// Total power needed for every vehicle to reach delay t_s
double power_demand(std::span<const LinkCoefficients> links, double t_s);

} // namespace dfrc

#endif
