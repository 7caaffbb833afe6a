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

#include "dfrc/allocate.hpp"
#include "dfrc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dfrc
{

namespace
{

constexpr double floor_slack = 1e-9; // relative tolerance on floors and budget

void check_inputs(std::span<const LinkCoefficients> links, double p_max)
{
    if (links.empty())
        throw DomainError("allocation needs at least one vehicle");
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw DomainError("total power budget must be positive");
    for (const auto &l : links)
        l.validate();
}

void require_feasible(std::span<const LinkCoefficients> links, double p_max, std::string_view who)
{
    const auto verdict = check_feasible(links, p_max);
    if (!verdict.feasible)
    {
        std::ostringstream os;
        os << who << ": power floors sum to " << verdict.total_floor_w << " W, exceeding the budget of " << p_max
           << " W by " << verdict.deficit_w << " W";
        throw InfeasibleError(os.str(), verdict.deficit_w);
    }
}

double delay_or_inf(double p_w, const LinkCoefficients &link)
{
    if (!(p_w > 0.0))
        return std::numeric_limits<double>::infinity();
    return delay(p_w, link);
}

void fill_delays(std::span<const LinkCoefficients> links, AllocationResult &res)
{
    res.delays.resize(res.powers.size());
    for (std::size_t k = 0; k < links.size(); ++k)
        res.delays[k] = delay_or_inf(res.powers[k], links[k]);
    res.max_delay = *std::max_element(res.delays.begin(), res.delays.end());
}

std::optional<std::size_t> first_floor_violation(std::span<const LinkCoefficients> links,
                                                 const std::vector<double> &powers)
{
    for (std::size_t k = 0; k < links.size(); ++k)
        if (powers[k] < links[k].power_floor * (1.0 - floor_slack))
            return k;
    return std::nullopt;
}

std::string floor_message(std::string_view prefix, const LinkCoefficients &link, std::size_t k, double p)
{
    std::ostringstream os;
    os << prefix << " vehicle " << k << " (id " << link.vehicle_id << ") gets " << p << " W, below its floor of "
       << link.power_floor << " W";
    return os.str();
}

} // namespace

std::string_view to_string(Policy policy)
{
    switch (policy)
    {
    case Policy::epa:
        return "epa";
    case Policy::closed_form:
        return "closed_form";
    case Policy::alg1:
        return "alg1";
    case Policy::alg2:
        return "alg2";
    case Policy::oracle_grid:
        return "oracle_grid";
    }
    return "unknown";
}

Policy parse_policy(std::string_view name)
{
    if (name == "epa")
        return Policy::epa;
    if (name == "closed_form")
        return Policy::closed_form;
    if (name == "alg1")
        return Policy::alg1;
    if (name == "alg2")
        return Policy::alg2;
    throw DomainError("unknown policy '" + std::string(name) + "' (expected epa, closed_form, alg1 or alg2)");
}

void SolverParams::validate() const
{
    if (!(eps_delay > 0.0) || !(eps_power > 0.0))
        throw DomainError("solver tolerances must be positive");
    if (delta_p_init && !(*delta_p_init > 0.0))
        throw DomainError("initial transfer step must be positive");
    if (max_iters < 1)
        throw DomainError("max_iters must be at least 1");
}

void AllocationResult::validate(std::span<const LinkCoefficients> links, double p_max) const
{
    if (powers.size() != links.size() || delays.size() != links.size())
        throw ContractError("allocation size does not match the number of links");
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
    if (total > p_max * (1.0 + floor_slack))
        throw ContractError("allocation exceeds the power budget");
    for (double p : powers)
        if (!(p >= 0.0))
            throw ContractError("allocation contains a negative power");
    if (feasible())
        if (auto k = first_floor_violation(links, powers))
            throw ContractError(floor_message("feasible allocation has", links[*k], *k, powers[*k]));
    if (max_delay != *std::max_element(delays.begin(), delays.end()))
        throw ContractError("max_delay is not the maximum of the per-vehicle delays");
}

Feasibility check_feasible(std::span<const LinkCoefficients> links, double p_max)
{
    if (links.empty())
        throw DomainError("feasibility check needs at least one vehicle");
    if (!(p_max > 0.0))
        throw DomainError("total power budget must be positive");
    Feasibility f;
    f.p_max_w = p_max;
    for (const auto &l : links)
        f.total_floor_w += l.power_floor;
    f.feasible = f.total_floor_w <= p_max;
    f.deficit_w = f.feasible ? 0.0 : f.total_floor_w - p_max;
    return f;
}

double power_demand(std::span<const LinkCoefficients> links, double t_s)
{
    double total = 0.0;
    for (const auto &l : links)
        total += power_for_delay(t_s, l);
    return total;
}

AllocationResult epa(std::span<const LinkCoefficients> links, double p_max)
{
    check_inputs(links, p_max);
    AllocationResult res;
    res.policy = Policy::epa;
    res.powers.assign(links.size(), p_max / static_cast<double>(links.size()));
    fill_delays(links, res);
    if (auto k = first_floor_violation(links, res.powers))
        res.infeasible_reason = floor_message("equal split:", links[*k], *k, res.powers[*k]);
    return res;
}

AllocationResult closed_form_equal_payload(std::span<const LinkCoefficients> links, double p_max)
{
    check_inputs(links, p_max);

    const auto [a_min, a_max] = std::minmax_element(links.begin(), links.end(),
                                                    [](const auto &x, const auto &y) { return x.a_coef < y.a_coef; });
    if ((a_max->a_coef - a_min->a_coef) / a_max->a_coef >= 1e-12)
        throw ContractError("closed form requires equal payloads for all vehicles; use alg1");
    require_feasible(links, p_max, "closed form");

    double inv_b_sum = 0.0;
    for (const auto &l : links)
        inv_b_sum += 1.0 / l.b_coef;

    AllocationResult res;
    res.policy = Policy::closed_form;
    res.powers.resize(links.size());
    for (std::size_t k = 0; k < links.size(); ++k)
        res.powers[k] = p_max / (links[k].b_coef * inv_b_sum);
    fill_delays(links, res);

    if (auto k = first_floor_violation(links, res.powers))
        throw InfeasibleError(floor_message("closed form infeasible; use alg2:", links[*k], *k, res.powers[*k]));
    return res;
}

AllocationResult alg1_delay_bisection(std::span<const LinkCoefficients> links, double p_max,
                                      const SolverParams &params)
{
    check_inputs(links, p_max);
    params.validate();
    require_feasible(links, p_max, "alg1");

    // Bracket from the equal split: the common optimal delay lies between the
    // fastest and slowest vehicle under equal power.
    const double p_equal = p_max / static_cast<double>(links.size());
    double t_lower = std::numeric_limits<double>::infinity();
    double t_upper = 0.0;
    for (const auto &l : links)
    {
        const double t = delay(p_equal, l);
        t_lower = std::min(t_lower, t);
        t_upper = std::max(t_upper, t);
    }

    AllocationResult res;
    res.policy = Policy::alg1;
    res.bracket_trace.push_back({t_lower, t_upper});

    while (t_upper - t_lower > params.eps_delay)
    {
        if (res.iterations >= params.max_iters)
        {
            std::ostringstream os;
            os << "alg1 did not converge in " << params.max_iters << " iterations; bracket [" << t_lower << ", "
               << t_upper << "]";
            throw ConvergenceError(os.str());
        }
        const double t = 0.5 * (t_lower + t_upper);
        if (t <= t_lower || t >= t_upper)
            break; // eps_delay below the floating-point resolution of T
        if (power_demand(links, t) > p_max)
            t_lower = t;
        else
            t_upper = t;
        ++res.iterations;
        res.bracket_trace.push_back({t_lower, t_upper});
    }

    // Collapse the remaining bracket to adjacent doubles so the output spends the
    // whole budget; the trace above stays the eps_delay-terminated loop.
    double lo = t_lower;
    double hi = t_upper;
    for (;;)
    {
        const double t = 0.5 * (lo + hi);
        if (t <= lo || t >= hi)
            break;
        if (power_demand(links, t) > p_max)
            lo = t;
        else
            hi = t;
    }

    res.powers.resize(links.size());
    for (std::size_t k = 0; k < links.size(); ++k)
        res.powers[k] = power_for_delay(hi, links[k]);
    fill_delays(links, res);

    if (auto k = first_floor_violation(links, res.powers))
    {
        res.converged = false;
        res.infeasible_reason = floor_message("floor binds, defer to alg2:", links[*k], *k, res.powers[*k]);
    }
    return res;
}

AllocationResult alg2_complementary(std::span<const LinkCoefficients> links, double p_max,
                                    const SolverParams &params)
{
    check_inputs(links, p_max);
    params.validate();
    require_feasible(links, p_max, "alg2");

    const std::size_t n = links.size();
    std::vector<double> p(n, p_max / static_cast<double>(n));

    // Lift vehicles below their floor and fund the lift from the others in
    // proportion to their slack.
    double lift = 0.0;
    double slack = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double gap = links[k].power_floor - p[k];
        if (gap > 0.0)
            lift += gap;
        else
            slack -= gap;
    }
    if (lift > 0.0)
    {
        const double share = lift / slack;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (p[k] < links[k].power_floor)
                p[k] = links[k].power_floor;
            else
                p[k] -= (p[k] - links[k].power_floor) * share;
        }
    }

    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = delay_or_inf(p[k], links[k]);

    AllocationResult res;
    res.policy = Policy::alg2;
    double step = params.delta_p_init.value_or(p_max / (2.0 * static_cast<double>(n)));

    while (step > params.eps_power)
    {
        if (res.iterations >= params.max_iters)
        {
            std::ostringstream os;
            os << "alg2 did not converge in " << params.max_iters << " iterations; step " << step << " W";
            throw ConvergenceError(os.str());
        }
        ++res.iterations;

        // Ties go to the lowest index.
        std::size_t k_max = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (t[k] > t[k_max])
                k_max = k;

        // Donors must have slack above their floor.
        std::optional<std::size_t> k_min;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k == k_max || !(p[k] > links[k].power_floor))
                continue;
            if (!k_min || t[k] < t[*k_min])
                k_min = k;
        }
        if (!k_min)
            break; // every possible donor sits at its floor

        const double moved = std::min(step, p[*k_min] - links[*k_min].power_floor);
        const double p_recv = p[k_max] + moved;
        const double p_donor = p[*k_min] - moved;
        const double t_recv = delay_or_inf(p_recv, links[k_max]);
        const double t_donor = delay_or_inf(p_donor, links[*k_min]);

        if (t_recv < t_donor)
        {
            // Overshoot: the pair would swap roles. Keep the old powers and refine.
            step *= 0.5;
            continue;
        }
        p[k_max] = p_recv;
        p[*k_min] = p_donor;
        t[k_max] = t_recv;
        t[*k_min] = t_donor;
    }

    res.powers = std::move(p);
    fill_delays(links, res);
    return res;
}

AllocationResult oracle_grid_search(std::span<const LinkCoefficients> links, double p_max, std::size_t grid_steps)
{
    check_inputs(links, p_max);
    if (links.size() > 4)
        throw ContractError("grid oracle refuses more than 4 vehicles");
    if (grid_steps < 100)
        throw DomainError("grid oracle needs at least 100 steps");
    require_feasible(links, p_max, "grid oracle");

    const std::size_t n = links.size();
    double floor_sum = 0.0;
    for (const auto &l : links)
        floor_sum += l.power_floor;
    const double free_w = p_max - floor_sum;
    const double unit = free_w / static_cast<double>(grid_steps);

    std::vector<std::size_t> counts(n, 0);
    std::vector<std::size_t> best_counts(n, 0);
    double best = std::numeric_limits<double>::infinity();
    bool have_best = false;

    auto power_at = [&](std::size_t k, std::size_t c) { return links[k].power_floor + unit * static_cast<double>(c); };

    // Enumerate compositions of grid_steps into n parts, pruning on the running max.
    auto visit = [&](auto &&self, std::size_t k, std::size_t remaining, double running) -> void {
        if (k + 1 == n)
        {
            counts[k] = remaining;
            const double worst = std::max(running, delay_or_inf(power_at(k, remaining), links[k]));
            if (!have_best || worst < best)
            {
                best = worst;
                best_counts = counts;
                have_best = true;
            }
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c)
        {
            const double worst = std::max(running, delay_or_inf(power_at(k, c), links[k]));
            if (have_best && worst >= best)
                continue;
            counts[k] = c;
            self(self, k + 1, remaining - c, worst);
        }
    };
    visit(visit, 0, grid_steps, 0.0);

    AllocationResult res;
    res.policy = Policy::oracle_grid;
    res.powers.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        res.powers[k] = power_at(k, best_counts[k]);
    fill_delays(links, res);
    res.iterations = grid_steps;
    return res;
}

AllocationResult allocate(Policy policy, std::span<const LinkCoefficients> links, double p_max,
                          const SolverParams &params)
{
    switch (policy)
    {
    case Policy::epa:
        return epa(links, p_max);
    case Policy::closed_form:
        return closed_form_equal_payload(links, p_max);
    case Policy::alg1:
        return alg1_delay_bisection(links, p_max, params);
    case Policy::alg2:
        return alg2_complementary(links, p_max, params);
    case Policy::oracle_grid:
        return oracle_grid_search(links, p_max, 2000);
    }
    throw DomainError("unknown policy");
}

} // namespace dfrc
