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

#include "dfrc/latency.hpp"
#include "dfrc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dfrc
{

void LinkCoefficients::validate() const
{
    if (!(a_coef > 0.0) || !std::isfinite(a_coef))
        throw DomainError("link A coefficient must be positive");
    if (!(b_coef > 0.0) || !std::isfinite(b_coef))
        throw DomainError("link B coefficient must be positive");
    if (!(power_floor >= 0.0) || !std::isfinite(power_floor))
        throw DomainError("link power floor must be nonnegative");
}

double rate(double p_w, double b_coef, double bandwidth_hz)
{
    if (!(p_w >= 0.0) || !(b_coef >= 0.0) || !(bandwidth_hz >= 0.0))
        throw DomainError("rate inputs must be nonnegative");
    return bandwidth_hz * std::log1p(b_coef * p_w) / std::numbers::ln2;
}

double delay(double p_w, const LinkCoefficients &link)
{
    if (!(p_w > 0.0))
        throw DomainError("delay is undefined at zero or negative power");
    const double snr = link.b_coef * p_w;
    if (!(snr > 0.0))
        throw DomainError("delay is undefined at zero SNR");
    return link.a_coef / std::log1p(snr);
}

double power_for_delay(double target_s, const LinkCoefficients &link)
{
    if (!(target_s > 0.0))
        throw DomainError("delay target must be positive");
    return std::expm1(link.a_coef / target_s) / link.b_coef;
}

LinkCoefficients make_link(const VehicleState &state, double tx_angle_est, double rx_angle_est,
                           const ArrayConfig &cfg, const PcrbModel &model, const PcrbThresholds &thr,
                           double slot_s, double deadline_s, FloorMode floor_mode, std::size_t vehicle_id)
{
    const double budget_s = std::min(slot_s, deadline_s);
    if (!(budget_s > 0.0))
        throw DomainError("slot length and deadline must be positive");

    LinkCoefficients link;
    link.vehicle_id = vehicle_id;
    link.a_coef = state.payload_bits / cfg.bandwidth_hz * std::numbers::ln2;
    link.b_coef = comm_channel_gain(state, tx_angle_est, rx_angle_est, cfg) / cfg.noise_comm;
    if (!(link.b_coef > 0.0))
        throw DomainError("effective channel gain vanished (beam pointed at a null)");

    const double deadline_floor = power_for_delay(budget_s, link);
    const double sensing_floor =
        floor_mode == FloorMode::relaxed ? power_floor_relaxed(model, thr) : power_floor_exact(model, thr);
    link.power_floor = std::max(deadline_floor, sensing_floor);
    link.validate();
    return link;
}

} // namespace dfrc
