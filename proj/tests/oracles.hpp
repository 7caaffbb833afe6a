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

// Independent reference computations used by the tests. Nothing here calls the
// library code path it is compared against.

#ifndef DFRC_TESTS_ORACLES_HPP
#define DFRC_TESTS_ORACLES_HPP

#include "dfrc/latency.hpp"
#include "dfrc/pcrb.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace oracle
{

constexpr double pi = 3.14159265358979323846;

// |a(x)^H a(y)| for an n-element half-wavelength ULA via the Dirichlet kernel
inline double ula_correlation(double x, double y, std::size_t n)
{
    const double psi = pi * (std::cos(x) - std::cos(y));
    const double half = 0.5 * psi;
    if (std::abs(std::sin(half)) < 1e-15)
        return 1.0;
    return std::abs(std::sin(static_cast<double>(n) * half) / (static_cast<double>(n) * std::sin(half)));
}

// Sum of b / (p eig + 1), written out term by term
inline double eigen_sum(double p, const std::array<double, 4> &b, const std::array<double, 4> &e)
{
    return b[0] / (p * e[0] + 1.0) + b[1] / (p * e[1] + 1.0) + b[2] / (p * e[2] + 1.0) + b[3] / (p * e[3] + 1.0);
}

// Bisection on the relaxed inequality sum b / (p eig) <= xi
inline double relaxed_floor_bisect(const std::array<double, 4> &b, const std::array<double, 4> &e, double xi)
{
    auto lhs = [&](double p) {
        double s = 0.0;
        for (int m = 0; m < 4; ++m)
            if (b[m] > 0.0)
                s += b[m] / (p * e[m]);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (lhs(hi) > xi)
        hi *= 2.0;
    for (int i = 0; i < 200; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        (lhs(mid) > xi ? lo : hi) = mid;
    }
    return hi;
}

// Smallest grid point (step h) meeting both exact bounds
inline double exact_floor_grid(const dfrc::PcrbModel &m, const dfrc::PcrbThresholds &t, double h, double p_hi)
{
    for (long i = 0; static_cast<double>(i) * h <= p_hi; ++i)
    {
        const double p = static_cast<double>(i) * h;
        if (eigen_sum(p, m.b1_sq, m.eigs) <= t.xi_theta && eigen_sum(p, m.b2_sq, m.eigs) <= t.xi_dist)
            return p;
    }
    return std::numeric_limits<double>::infinity();
}

// Diagonal of (p J_o + J_p)^{-1} by direct inversion
inline Eigen::Vector4d pcrb_diag_inverse(double p, const Eigen::Matrix4cd &jp, const Eigen::Matrix4cd &jo)
{
    const Eigen::Matrix4cd j = p * jo + jp;
    return j.inverse().diagonal().real();
}

inline Eigen::Matrix4cd random_pd(std::mt19937_64 &rng, double ridge)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = {g(rng), g(rng)};
    return a.adjoint() * a + ridge * Eigen::Matrix4cd::Identity();
}

// delay through payload / rate instead of A / ln(1 + B p)
inline double delay_via_rate(double payload_bits, double bandwidth_hz, double b, double p)
{
    return payload_bits / (bandwidth_hz * std::log2(1.0 + b * p));
}

// Equal-payload closed form written from the common-delay condition
inline std::vector<double> closed_form(const std::vector<dfrc::LinkCoefficients> &links, double p_max)
{
    double s = 0.0;
    for (const auto &l : links)
        s += 1.0 / l.b_coef;
    std::vector<double> p;
    for (const auto &l : links)
        p.push_back(p_max / (l.b_coef * s));
    return p;
}

inline double max_delay_of(const std::vector<dfrc::LinkCoefficients> &links, const std::vector<double> &p)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < links.size(); ++k)
        worst = std::max(worst, links[k].a_coef / std::log(1.0 + links[k].b_coef * p[k]));
    return worst;
}

// Scale-free random instance: payload terms around 1 s * nat, SNR slopes so that
// b * p_max / K lies in [2, 200].
inline std::vector<dfrc::LinkCoefficients> random_links(std::mt19937_64 &rng, std::size_t k, double p_max,
                                                        bool equal_a)
{
    std::uniform_real_distribution<double> ua(0.5, 2.0);
    std::uniform_real_distribution<double> ulog(std::log(2.0), std::log(200.0));
    const double a0 = ua(rng);
    std::vector<dfrc::LinkCoefficients> links(k);
    for (std::size_t i = 0; i < k; ++i)
    {
        links[i].a_coef = equal_a ? a0 : ua(rng);
        links[i].b_coef = std::exp(ulog(rng)) * static_cast<double>(k) / p_max;
        links[i].power_floor = 0.0;
        links[i].vehicle_id = i;
    }
    return links;
}

} // namespace oracle

#endif
