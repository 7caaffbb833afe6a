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

#ifndef DFRC_SCENARIO_HPP
#define DFRC_SCENARIO_HPP

#include "dfrc/allocate.hpp"
#include "dfrc/array_channel.hpp"
#include "dfrc/latency.hpp"
#include "dfrc/pcrb.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace dfrc
{

struct VehicleSpec
{
    double position_m = 0.0; // longitudinal coordinate before the first slot; 0 is broadside
    double speed_mps = 0.0;  // along the road, positive in the +x direction
    double payload_bits = 4000.0;
    PcrbModel pcrb;
};

// Straight road parallel to the RSU array, vehicles at constant velocity.
struct RoadScenario
{
    double rsu_offset_m = 4.0;
    double slot_s = 0.01;
    std::size_t n_slots = 1;
    std::optional<double> deadline_s; // defaults to slot_s
    double p_max_w = 1.0;
    PcrbThresholds thresholds;
    ArrayConfig arrays;
    double prediction_noise_std_rad = 0.0; // one-slot prediction; two-slot uses twice this
    std::uint64_t seed = 1;
    std::vector<VehicleSpec> vehicles;

    double deadline() const { return deadline_s.value_or(slot_s); }
    void validate() const;
};

struct KinematicState
{
    double angle_rad = 0.0;
    double dist_m = 0.0;
    double longitudinal_m = 0.0;
};

// One constant-velocity step: x' = x + v dt, d = sqrt(x'^2 + H^2), theta = acos(x'/d).
KinematicState kinematics_step(double longitudinal_m, double speed_mps, double slot_s, double rsu_offset_m);

// Linear extrapolation `horizon` slots past the last entry of `history`, using the
// last horizon + 1 entries, plus N(0, (horizon * noise_std)^2) noise. The result is
// clamped into (1e-6, pi - 1e-6). One standard normal is always drawn from rng.
double predict_angle(std::span<const double> history, int horizon, double noise_std_rad, std::mt19937_64 &rng);

inline constexpr double angle_clamp_margin = 1e-6;

struct SlotRecord
{
    std::size_t slot = 0;
    Policy policy = Policy::epa;
    std::vector<VehicleState> states;  // true states
    std::vector<double> tx_angle_pred; // one-slot predictions (precoders)
    std::vector<double> rx_angle_pred; // two-slot predictions (detectors)
    std::vector<LinkCoefficients> links;
    AllocationResult result;
    std::vector<double> pcrb_theta; // at the allocated powers
    std::vector<double> pcrb_dist;
};

FloorMode floor_mode_for(Policy policy);

// True longitudinal position of a vehicle at slot index (may be negative for pre-history).
double longitudinal_at(const VehicleSpec &vehicle, const RoadScenario &scenario, long slot);

// Solves one slot: advance kinematics, predict angles, build links, allocate.
// Deterministic in (scenario, slot_index, policy, params). Infeasibility is
// rethrown as InfeasibleError with slot context.
SlotRecord run_slot(const RoadScenario &scenario, std::size_t slot_index, Policy policy,
                    const SolverParams &params = {});

} // namespace dfrc

#endif
