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

#ifndef DFRC_COMMANDS_HPP
#define DFRC_COMMANDS_HPP

#include "dfrc/allocate.hpp"
#include "dfrc/config.hpp"
#include "dfrc/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dfrc
{

// Runs every slot and writes one CSV row per slot and vehicle:
// slot,vehicle,power_w,delay_s,pcrb_theta,pcrb_dist,max_delay_s,iterations,converged
// Rows of slots solved before an infeasible slot are written before the
// InfeasibleError propagates.
void write_run_csv(const RoadScenario &scenario, Policy policy, const SolverParams &params, std::ostream &out);

// Scenario with one sweep axis overridden
RoadScenario apply_axis(const RoadScenario &base, SweepAxis axis, double value, double replicate_offset_m);

struct SweepRow
{
    double axis_value = 0.0;
    Policy policy = Policy::epa;
    std::uint64_t seed = 0;
    double max_delay_s = 0.0; // NaN when the policy reported infeasibility
    bool feasible = false;
};

struct BoundaryRow
{
    double axis_value = 0.0;
    std::uint64_t seed = 0;
    double alg1_min_p_max_w = 0.0; // +inf when no finite budget works
};

struct SweepOutput
{
    std::vector<SweepRow> rows;         // axis value, policy, seed order
    std::vector<BoundaryRow> boundary;  // axis value, seed order
};

// Smallest p_max at which alg1 accepts slot 0, by bisection to 1e-9 relative.
double alg1_min_feasible_p_max(const RoadScenario &scenario, const SolverParams &params);

// Points run on up to `threads` workers (0 = hardware concurrency); output order
// is independent of scheduling.
SweepOutput run_sweep(const RoadScenario &base, const SweepSpec &spec, const SolverParams &params,
                      unsigned threads = 0);

void write_sweep_csv(const SweepOutput &sweep, std::ostream &out);    // axis_value,policy,seed,max_delay_s,feasible
void write_boundary_csv(const SweepOutput &sweep, std::ostream &out); // axis_value,seed,alg1_min_p_max_w

// alg1 bracket trajectory on slot 0: iter,t_lower_s,t_upper_s
std::vector<BracketStep> run_trace(const RoadScenario &scenario, const SolverParams &params);
void write_trace_csv(const std::vector<BracketStep> &trace, std::ostream &out);

} // namespace dfrc

#endif
