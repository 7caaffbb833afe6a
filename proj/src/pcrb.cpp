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

#include "dfrc/pcrb.hpp"
#include "dfrc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dfrc
{

namespace
{

void check_row(const std::array<double, 4> &row, const char *name)
{
    for (double x : row)
        if (!std::isfinite(x) || x < 0.0)
            throw DomainError(std::string("PCRB model entry ") + name + " must be finite and nonnegative");
}

double eigen_form_sum(double p_w, const std::array<double, 4> &b_sq, const std::array<double, 4> &eigs)
{
    if (!(p_w >= 0.0))
        throw DomainError("transmit power must be nonnegative");
    double acc = 0.0;
    for (std::size_t m = 0; m < 4; ++m)
        acc += b_sq[m] / (p_w * eigs[m] + 1.0);
    return acc;
}

// Relaxed single-row floor (1/xi) sum b/eig
double relaxed_row_floor(const std::array<double, 4> &b_sq, const std::array<double, 4> &eigs, double xi,
                         const char *row)
{
    double acc = 0.0;
    for (std::size_t m = 0; m < 4; ++m)
    {
        if (b_sq[m] == 0.0)
            continue;
        if (eigs[m] <= 0.0)
            throw InfeasibleError(std::string("relaxed ") + row +
                                  " bound cannot be met: nonzero prior term with zero observed eigenvalue");
        acc += b_sq[m] / eigs[m];
    }
    return acc / xi;
}

// Limit of the exact bound as p -> infinity
double saturation_level(const std::array<double, 4> &b_sq, const std::array<double, 4> &eigs)
{
    double acc = 0.0;
    for (std::size_t m = 0; m < 4; ++m)
        if (eigs[m] <= 0.0)
            acc += b_sq[m];
    return acc;
}

double max_asymmetry(const Eigen::Matrix4cd &m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

void PcrbModel::validate() const
{
    check_row(b1_sq, "b1_sq");
    check_row(b2_sq, "b2_sq");
    check_row(eigs, "eigs");
}

void PcrbThresholds::validate() const
{
    if (!(xi_theta > 0.0) || !(xi_dist > 0.0))
        throw DomainError("PCRB thresholds must be positive");
}

double pcrb_angle(double p_w, const PcrbModel &model)
{
    return eigen_form_sum(p_w, model.b1_sq, model.eigs);
}

double pcrb_dist(double p_w, const PcrbModel &model)
{
    return eigen_form_sum(p_w, model.b2_sq, model.eigs);
}

double power_floor_relaxed(const PcrbModel &model, const PcrbThresholds &thr)
{
    model.validate();
    thr.validate();
    const double p_theta = relaxed_row_floor(model.b1_sq, model.eigs, thr.xi_theta, "angle");
    const double p_dist = relaxed_row_floor(model.b2_sq, model.eigs, thr.xi_dist, "distance");
    return std::max(p_theta, p_dist);
}

double power_floor_exact(const PcrbModel &model, const PcrbThresholds &thr)
{
    model.validate();
    thr.validate();

    auto meets = [&](double p) {
        return pcrb_angle(p, model) <= thr.xi_theta && pcrb_dist(p, model) <= thr.xi_dist;
    };
    if (meets(0.0))
        return 0.0;

    if (saturation_level(model.b1_sq, model.eigs) >= thr.xi_theta)
        throw InfeasibleError("angle PCRB threshold unreachable at any transmit power");
    if (saturation_level(model.b2_sq, model.eigs) >= thr.xi_dist)
        throw InfeasibleError("distance PCRB threshold unreachable at any transmit power");

    double lo = 0.0;
    double hi = 1.0;
    const double hi_cap = std::ldexp(1.0, 60);
    while (!meets(hi))
    {
        lo = hi;
        hi *= 2.0;
        if (hi > hi_cap)
            throw InfeasibleError("PCRB thresholds need more than 2^60 W");
    }

    while (hi - lo > power_floor_tolerance_w)
    {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break; // bracket is one ulp wide
        if (meets(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

PcrbModel build_pcrb_model(const Eigen::Matrix4cd &prior_fisher, const Eigen::Matrix4cd &unit_power_observed_fisher)
{
    constexpr double hermitian_tol = 1e-9;
    if (!prior_fisher.allFinite() || !unit_power_observed_fisher.allFinite())
        throw DomainError("Fisher matrices must be finite");
    if (max_asymmetry(prior_fisher) > hermitian_tol)
        throw DomainError("prior Fisher matrix is not Hermitian");
    if (max_asymmetry(unit_power_observed_fisher) > hermitian_tol)
        throw DomainError("observed Fisher matrix is not Hermitian");

    const Eigen::Matrix4cd jp = 0.5 * (prior_fisher + prior_fisher.adjoint());
    const Eigen::Matrix4cd jo = 0.5 * (unit_power_observed_fisher + unit_power_observed_fisher.adjoint());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> prior_eig(jp);
    if (prior_eig.info() != Eigen::Success)
        throw DomainError("eigendecomposition of the prior Fisher matrix failed");
    const Eigen::Vector4d prior_vals = prior_eig.eigenvalues();
    if (!(prior_vals.minCoeff() > 1e-12))
        throw DomainError("prior Fisher matrix is not positive definite");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> obs_eig(jo, Eigen::EigenvaluesOnly);
    const double obs_scale = std::max(1.0, jo.cwiseAbs().maxCoeff());
    if (obs_eig.eigenvalues().minCoeff() < -1e-9 * obs_scale)
        throw DomainError("observed Fisher matrix is not positive semidefinite");

    // Hermitian inverse square root of the prior
    const Eigen::Matrix4cd inv_sqrt = prior_eig.eigenvectors() *
                                      prior_vals.cwiseSqrt().cwiseInverse().asDiagonal() *
                                      prior_eig.eigenvectors().adjoint();

    Eigen::Matrix4cd whitened = inv_sqrt * jo * inv_sqrt;
    whitened = 0.5 * (whitened + whitened.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> white_eig(whitened);
    if (white_eig.info() != Eigen::Success)
        throw DomainError("eigendecomposition of the whitened Fisher matrix failed");

    std::array<int, 4> order{};
    std::iota(order.begin(), order.end(), 0);
    const Eigen::Vector4d vals = white_eig.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals(a) > vals(b); });

    const Eigen::Matrix4cd basis = inv_sqrt * white_eig.eigenvectors();

    PcrbModel model;
    for (std::size_t m = 0; m < 4; ++m)
    {
        const int col = order[m];
        model.eigs[m] = std::max(0.0, vals(col)); // round-off can leave -1e-17 on a PSD input
        model.b1_sq[m] = std::norm(basis(0, col));
        model.b2_sq[m] = std::norm(basis(1, col));
    }
    return model;
}

Eigen::Matrix4cd synthetic_prior(const std::array<double, 4> &prior_std)
{
    Eigen::Matrix4cd jp = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
    {
        const double s = prior_std[static_cast<std::size_t>(i)];
        if (!(s > 0.0) || !std::isfinite(s))
            throw DomainError("prior standard deviations must be positive and finite");
        jp(i, i) = 1.0 / (s * s);
    }
    return jp;
}

Eigen::Matrix4cd observed_fisher_from_sensitivity(const Eigen::Matrix4cd &sensitivity)
{
    return sensitivity.adjoint() * sensitivity;
}

} // namespace dfrc
