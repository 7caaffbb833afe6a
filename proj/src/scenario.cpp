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

#include "dfrc/scenario.hpp"
#include "dfrc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dfrc
{

namespace
{

double angle_of(double longitudinal_m, double rsu_offset_m)
{
    const double d = std::hypot(longitudinal_m, rsu_offset_m);
    return std::acos(longitudinal_m / d);
}

std::mt19937_64 slot_rng(std::uint64_t seed, std::size_t slot)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(slot >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

void RoadScenario::validate() const
{
    if (!(rsu_offset_m > 0.0))
        throw DomainError("RSU offset from the road must be positive");
    if (!(slot_s > 0.0))
        throw DomainError("slot length must be positive");
    if (n_slots < 1)
        throw DomainError("scenario needs at least one slot");
    if (deadline_s && !(*deadline_s > 0.0))
        throw DomainError("deadline must be positive");
    if (!(p_max_w > 0.0))
        throw DomainError("power budget must be positive");
    if (!(prediction_noise_std_rad >= 0.0))
        throw DomainError("prediction noise must be nonnegative");
    if (vehicles.empty())
        throw DomainError("scenario needs at least one vehicle");
    thresholds.validate();
    arrays.validate();
    for (const auto &v : vehicles)
    {
        if (!(v.payload_bits > 0.0))
            throw DomainError("payload size must be positive");
        if (!std::isfinite(v.position_m) || !std::isfinite(v.speed_mps))
            throw DomainError("vehicle position and speed must be finite");
        v.pcrb.validate();
    }
}

KinematicState kinematics_step(double longitudinal_m, double speed_mps, double slot_s, double rsu_offset_m)
{
    if (!(rsu_offset_m > 0.0))
        throw DomainError("RSU offset from the road must be positive");
    KinematicState s;
    s.longitudinal_m = longitudinal_m + speed_mps * slot_s;
    s.dist_m = std::hypot(s.longitudinal_m, rsu_offset_m);
    s.angle_rad = std::acos(s.longitudinal_m / s.dist_m);
    return s;
}

double predict_angle(std::span<const double> history, int horizon, double noise_std_rad, std::mt19937_64 &rng)
{
    if (horizon < 1)
        throw DomainError("prediction horizon must be at least one slot");
    if (history.size() < static_cast<std::size_t>(horizon) + 1)
        throw DomainError("prediction needs at least horizon + 1 past angles");
    if (!(noise_std_rad >= 0.0))
        throw DomainError("prediction noise must be nonnegative");

    const double last = history[history.size() - 1];
    const double first = history[history.size() - 1 - static_cast<std::size_t>(horizon)];
    // slope per slot over the window, extrapolated horizon slots ahead
    const double predicted = last + (last - first);

    std::normal_distribution<double> unit(0.0, 1.0);
    const double noisy = predicted + static_cast<double>(horizon) * noise_std_rad * unit(rng);
    return std::clamp(noisy, angle_clamp_margin, pi - angle_clamp_margin);
}

FloorMode floor_mode_for(Policy policy)
{
    switch (policy)
    {
    case Policy::closed_form:
    case Policy::alg1:
        return FloorMode::relaxed;
    default:
        return FloorMode::exact;
    }
}

double longitudinal_at(const VehicleSpec &vehicle, const RoadScenario &scenario, long slot)
{
    // position_m is the state one step before slot 0
    double x = vehicle.position_m;
    if (slot >= 0)
    {
        for (long j = 0; j <= slot; ++j)
            x = kinematics_step(x, vehicle.speed_mps, scenario.slot_s, scenario.rsu_offset_m).longitudinal_m;
    }
    else
    {
        for (long j = -1; j > slot; --j)
            x -= vehicle.speed_mps * scenario.slot_s;
    }
    return x;
}

SlotRecord run_slot(const RoadScenario &scenario, std::size_t slot_index, Policy policy, const SolverParams &params)
{
    scenario.validate();
    if (slot_index >= scenario.n_slots)
        throw DomainError("slot index " + std::to_string(slot_index) + " is past the scenario's " +
                          std::to_string(scenario.n_slots) + " slots");

    const std::size_t n = scenario.vehicles.size();
    const long slot = static_cast<long>(slot_index);
    auto rng = slot_rng(scenario.seed, slot_index);
    const FloorMode mode = floor_mode_for(policy);

    SlotRecord rec;
    rec.slot = slot_index;
    rec.policy = policy;
    rec.states.reserve(n);
    rec.links.reserve(n);

    try
    {
        for (std::size_t k = 0; k < n; ++k)
        {
            const auto &veh = scenario.vehicles[k];
            const auto now = kinematics_step(longitudinal_at(veh, scenario, slot - 1), veh.speed_mps, scenario.slot_s,
                                             scenario.rsu_offset_m);

            VehicleState state;
            state.angle_rad = now.angle_rad;
            state.dist_m = now.dist_m;
            state.speed_mps = veh.speed_mps;
            const double amp = scenario.arrays.alpha_const / now.dist_m;
            state.radar_coeff = {amp * amp, 0.0};
            state.payload_bits = veh.payload_bits;

            // Precoder sees data up to slot i-1, detector up to slot i-2.
            std::array<double, 2> recent{};
            for (long j = 0; j < 2; ++j)
                recent[static_cast<std::size_t>(j)] =
                    angle_of(longitudinal_at(veh, scenario, slot - 2 + j), scenario.rsu_offset_m);
            std::array<double, 3> older{};
            for (long j = 0; j < 3; ++j)
                older[static_cast<std::size_t>(j)] =
                    angle_of(longitudinal_at(veh, scenario, slot - 4 + j), scenario.rsu_offset_m);

            const double tx_pred = predict_angle(recent, 1, scenario.prediction_noise_std_rad, rng);
            const double rx_pred = predict_angle(older, 2, scenario.prediction_noise_std_rad, rng);

            rec.states.push_back(state);
            rec.tx_angle_pred.push_back(tx_pred);
            rec.rx_angle_pred.push_back(rx_pred);
            rec.links.push_back(make_link(state, tx_pred, rx_pred, scenario.arrays, veh.pcrb, scenario.thresholds,
                                          scenario.slot_s, scenario.deadline(), mode, k));
        }

        rec.result = allocate(policy, rec.links, scenario.p_max_w, params);
    }
    catch (const InfeasibleError &e)
    {
        throw InfeasibleError("slot " + std::to_string(slot_index) + ": " + e.what(), e.deficit_w());
    }

    rec.pcrb_theta.resize(n);
    rec.pcrb_dist.resize(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        rec.pcrb_theta[k] = pcrb_angle(rec.result.powers[k], scenario.vehicles[k].pcrb);
        rec.pcrb_dist[k] = pcrb_dist(rec.result.powers[k], scenario.vehicles[k].pcrb);
    }
    return rec;
}

} // namespace dfrc
