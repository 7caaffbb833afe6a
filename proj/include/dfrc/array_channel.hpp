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

#ifndef DFRC_ARRAY_CHANNEL_HPP
#define DFRC_ARRAY_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace dfrc
{

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = 3.14159265358979323846;

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Antenna counts, RF front-end and noise settings shared by all vehicles.
struct ArrayConfig
{
    std::size_t n_tx = 64;         // RSU transmit antennas
    std::size_t n_rx = 64;         // RSU receive antennas
    std::size_t n_veh = 4;         // vehicle receive antennas
    double carrier_hz = 30.0e9;
    double bandwidth_hz = 400.0e6;
    double noise_comm = 0.0025;    // linear noise variance at the vehicles
    double noise_radar = 0.0025;   // linear noise variance at the RSU receiver
    double alpha_const = 1.0;      // path-gain constant of the large-scale fading factor

    void validate() const; // throws DomainError
};

// Position state of one vehicle in one slot, plus its payload.
struct VehicleState
{
    double angle_rad = pi / 2.0; // angle of departure, strictly inside (0, pi)
    double dist_m = 1.0;
    double speed_mps = 0.0;
    cdouble radar_coeff{1.0, 0.0};
    double payload_bits = 4000.0;

    void validate() const; // throws DomainError
};

// Half-wavelength ULA response with unit Euclidean norm:
// element m is exp(-j m pi cos(angle)) / sqrt(n).
CVector steering_vector(double angle_rad, std::size_t n);

// alpha = alpha_const / d * exp(j 2 pi f_c d / c)
cdouble large_scale_gain(double dist_m, const ArrayConfig &cfg);

// Effective power gain kappa^2 |w^H H_C u|^2 of the matched-filter link with
// u = a(tx_angle_est), w = v(rx_angle_est) and the channel at the true angle.
// Unit-modulus phasors (Doppler, carrier phase) do not contribute.
double comm_channel_gain(const VehicleState &true_state, double tx_angle_est, double rx_angle_est,
                         const ArrayConfig &cfg);

// Inner product x^H y
cdouble inner(const CVector &x, const CVector &y);

double doppler_shift_comm(const VehicleState &state, const ArrayConfig &cfg);  // v cos(theta) f_c / c
double doppler_shift_radar(const VehicleState &state, const ArrayConfig &cfg); // round trip, twice the above
double echo_delay(const VehicleState &state);                                   // 2 d / c

} // namespace dfrc

#endif
