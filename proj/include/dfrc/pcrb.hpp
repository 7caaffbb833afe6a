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

#ifndef DFRC_PCRB_HPP
#define DFRC_PCRB_HPP

#include <Eigen/Dense>
#include <array>

namespace dfrc
{

// Eigen-form of the posterior CRB for one vehicle. With Fisher information
// J(p) = p * J_o + J_p (J_o per watt of transmit power), the angle and distance
// bounds are
//
//   PCRB_theta(p) = sum_m b1_sq[m] / (p * eigs[m] + 1)
//   PCRB_dist(p)  = sum_m b2_sq[m] / (p * eigs[m] + 1)
//
// where eigs are the eigenvalues of J_p^{-1/2} J_o J_p^{-1/2}.
struct PcrbModel
{
    std::array<double, 4> b1_sq{};
    std::array<double, 4> b2_sq{};
    std::array<double, 4> eigs{};

    // Entries must be finite and nonnegative. A model with all-zero eigs is
    // valid (no observation information); the power-floor operations reject it.
    void validate() const;
};

struct PcrbThresholds
{
    double xi_theta = 1.0; // rad^2
    double xi_dist = 1.0;  // m^2

    void validate() const;
};

double pcrb_angle(double p_w, const PcrbModel &model);
double pcrb_dist(double p_w, const PcrbModel &model);

// Smallest power meeting the relaxed bounds sum_m b_sq[m] / (p eigs[m]) <= xi:
// max(p_theta, p_dist). Throws InfeasibleError when a nonzero b entry meets a zero eigenvalue.
double power_floor_relaxed(const PcrbModel &model, const PcrbThresholds &thr);

// Smallest power meeting both exact bounds, by bisection to 1e-9 W.
// Returns 0 when p = 0 already satisfies both. Throws InfeasibleError when the
// large-power limit of either bound does not drop below its threshold.
double power_floor_exact(const PcrbModel &model, const PcrbThresholds &thr);

inline constexpr double power_floor_tolerance_w = 1e-9;

// Eigen-form from a Hermitian positive-definite prior Fisher matrix and a
// Hermitian PSD observed Fisher matrix at unit transmit power. eigs are sorted
// descending (stable) and the b rows are the squared magnitudes of the first two
// rows of J_p^{-1/2} U, where M = U diag(eigs) U^H, so that the model reproduces
// the diagonal of (p J_o + J_p)^{-1} exactly.
PcrbModel build_pcrb_model(const Eigen::Matrix4cd &prior_fisher, const Eigen::Matrix4cd &unit_power_observed_fisher);

// diag(sigma^-2) prior for [theta, d, v, beta]
Eigen::Matrix4cd synthetic_prior(const std::array<double, 4> &prior_std);

// G^H G
Eigen::Matrix4cd observed_fisher_from_sensitivity(const Eigen::Matrix4cd &sensitivity);

} // namespace dfrc

#endif
