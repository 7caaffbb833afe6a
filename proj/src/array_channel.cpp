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

#include "dfrc/array_channel.hpp"
#include "dfrc/errors.hpp"

#include <cmath>
#include <string>

namespace dfrc
{

namespace
{
void check_angle(double angle_rad)
{
    if (!(angle_rad > 0.0 && angle_rad < pi))
        throw DomainError("angle must lie strictly inside (0, pi), got " + std::to_string(angle_rad));
}
} // namespace

void ArrayConfig::validate() const
{
    if (n_tx == 0 || n_rx == 0 || n_veh == 0)
        throw DomainError("antenna counts must be at least 1");
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw DomainError("carrier frequency and bandwidth must be positive");
    if (!(noise_comm > 0.0) || !(noise_radar > 0.0))
        throw DomainError("noise variances must be positive");
    if (!(alpha_const > 0.0))
        throw DomainError("path-gain constant must be positive");
}

void VehicleState::validate() const
{
    check_angle(angle_rad);
    if (!(dist_m > 0.0))
        throw DomainError("vehicle distance must be positive");
    if (!(payload_bits > 0.0))
        throw DomainError("payload size must be positive");
    if (!std::isfinite(speed_mps))
        throw DomainError("vehicle speed must be finite");
}

CVector steering_vector(double angle_rad, std::size_t n)
{
    if (n == 0)
        throw DomainError("steering vector length must be at least 1");
    check_angle(angle_rad);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double phase_step = -pi * std::cos(angle_rad);
    CVector out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = std::polar(scale, phase_step * static_cast<double>(m));
    return out;
}

cdouble large_scale_gain(double dist_m, const ArrayConfig &cfg)
{
    if (!(dist_m > 0.0))
        throw DomainError("distance must be positive");
    // Reduce the cycle count before scaling by 2 pi; d f_c / c is thousands of cycles at mmWave.
    const double cycles = dist_m * cfg.carrier_hz / speed_of_light;
    const double phase = 2.0 * pi * (cycles - std::floor(cycles));
    return std::polar(cfg.alpha_const / dist_m, phase);
}

cdouble inner(const CVector &x, const CVector &y)
{
    if (x.size() != y.size())
        throw DomainError("inner product of vectors with different lengths");
    cdouble acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::conj(x[i]) * y[i];
    return acc;
}

double comm_channel_gain(const VehicleState &true_state, double tx_angle_est, double rx_angle_est,
                         const ArrayConfig &cfg)
{
    cfg.validate();
    true_state.validate();

    const auto a_true = steering_vector(true_state.angle_rad, cfg.n_tx);
    const auto v_true = steering_vector(true_state.angle_rad, cfg.n_veh);
    const auto precoder = steering_vector(tx_angle_est, cfg.n_tx);
    const auto detector = steering_vector(rx_angle_est, cfg.n_veh);

    // w^H (alpha v a^H) u = alpha (w^H v)(a^H u)
    const double alpha_mag = cfg.alpha_const / true_state.dist_m;
    const double alpha_sq = alpha_mag * alpha_mag;
    const double rx_match = std::norm(inner(detector, v_true));
    const double tx_match = std::norm(inner(a_true, precoder));
    const double kappa_sq = static_cast<double>(cfg.n_tx) * static_cast<double>(cfg.n_veh);
    return kappa_sq * alpha_sq * rx_match * tx_match;
}

double doppler_shift_comm(const VehicleState &state, const ArrayConfig &cfg)
{
    state.validate();
    return state.speed_mps * std::cos(state.angle_rad) * cfg.carrier_hz / speed_of_light;
}

double doppler_shift_radar(const VehicleState &state, const ArrayConfig &cfg)
{
    return 2.0 * doppler_shift_comm(state, cfg);
}

double echo_delay(const VehicleState &state)
{
    if (!(state.dist_m > 0.0))
        throw DomainError("distance must be positive");
    return 2.0 * state.dist_m / speed_of_light;
}

} // namespace dfrc
