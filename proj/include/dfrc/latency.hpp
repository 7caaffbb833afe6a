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

#ifndef DFRC_LATENCY_HPP
#define DFRC_LATENCY_HPP

#include "dfrc/array_channel.hpp"
#include "dfrc/pcrb.hpp"

#include <cstddef>

namespace dfrc
{

enum class FloorMode
{
    relaxed,
    exact
};

// Per-vehicle quantities every allocator works from:
// T(p) = a_coef / ln(1 + b_coef p), p >= power_floor.
struct LinkCoefficients
{
    double a_coef = 0.0;      // (D / B) ln 2, seconds * nats
    double b_coef = 0.0;      // effective SNR per watt
    double power_floor = 0.0; // watts
    std::size_t vehicle_id = 0;

    void validate() const;
};

// B log2(1 + b p), bits/s
double rate(double p_w, double b_coef, double bandwidth_hz);

// a / ln(1 + b p). Zero power has no finite delay and is rejected.
double delay(double p_w, const LinkCoefficients &link);

// Power that makes the link meet delay target_s exactly: (exp(a / T) - 1) / b
double power_for_delay(double target_s, const LinkCoefficients &link);

// Builds A, B and the floor max(p_R, PCRB floor) for one vehicle.
// p_R is the power meeting delay min(slot_s, deadline_s) with equality.
LinkCoefficients make_link(const VehicleState &state, double tx_angle_est, double rx_angle_est,
                           const ArrayConfig &cfg, const PcrbModel &model, const PcrbThresholds &thr,
                           double slot_s, double deadline_s, FloorMode floor_mode, std::size_t vehicle_id = 0);

} // namespace dfrc

#endif
