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

#include "dfrc/commands.hpp"
#include "dfrc/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace dfrc
{

void write_run_csv(const RoadScenario &scenario, Policy policy, const SolverParams &params, std::ostream &out)
{
    out << "slot,vehicle,power_w,delay_s,pcrb_theta,pcrb_dist,max_delay_s,iterations,converged\n";
    for (std::size_t slot = 0; slot < scenario.n_slots; ++slot)
    {
        const SlotRecord rec = run_slot(scenario, slot, policy, params);
        rec.result.validate(rec.links, scenario.p_max_w);
        spdlog::debug("slot {}: {} max delay {:.6g} s after {} iterations", slot, to_string(policy),
                      rec.result.max_delay, rec.result.iterations);
        if (rec.result.infeasible_reason)
            spdlog::warn("slot {}: {}", slot, *rec.result.infeasible_reason);

        for (std::size_t k = 0; k < rec.result.powers.size(); ++k)
            out << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n", slot, k,
                               rec.result.powers[k], rec.result.delays[k], rec.pcrb_theta[k], rec.pcrb_dist[k],
                               rec.result.max_delay, rec.result.iterations, rec.result.converged ? 1 : 0);
    }
    out.flush();
}

RoadScenario apply_axis(const RoadScenario &base, SweepAxis axis, double value, double replicate_offset_m)
{
    RoadScenario s = base;
    const auto as_count = [&] {
        if (!(value >= 1.0) || value != std::floor(value))
            throw DomainError("axis value must be a positive integer");
        return static_cast<std::size_t>(value);
    };
    switch (axis)
    {
    case SweepAxis::p_max:
        if (!(value > 0.0))
            throw DomainError("p_max must be positive");
        s.p_max_w = value;
        break;
    case SweepAxis::n_tx:
        s.arrays.n_tx = as_count();
        break;
    case SweepAxis::n_rx:
        s.arrays.n_rx = as_count();
        break;
    case SweepAxis::n_veh_antennas:
        s.arrays.n_veh = as_count();
        break;
    case SweepAxis::n_vehicles: {
        const std::size_t k = as_count();
        const std::size_t have = base.vehicles.size();
        s.vehicles.clear();
        for (std::size_t i = 0; i < k; ++i)
        {
            VehicleSpec v = base.vehicles[i % have];
            v.position_m += replicate_offset_m * static_cast<double>(i / have);
            s.vehicles.push_back(v);
        }
        break;
    }
    }
    return s;
}

double alg1_min_feasible_p_max(const RoadScenario &scenario, const SolverParams &params)
{
    const auto accepts = [&](double p_max) {
        RoadScenario s = scenario;
        s.p_max_w = p_max;
        try
        {
            return run_slot(s, 0, Policy::alg1, params).result.feasible();
        }
        catch (const InfeasibleError &)
        {
            return false;
        }
    };

    double hi = scenario.p_max_w;
    double lo = 0.0;
    const double hi_cap = std::ldexp(scenario.p_max_w, 100);
    while (!accepts(hi))
    {
        lo = hi;
        hi *= 2.0;
        if (hi > hi_cap)
            return std::numeric_limits<double>::infinity(); // PCRB thresholds out of reach
    }
    while (hi - lo > 1e-9 * hi)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || !(mid > 0.0))
            break;
        if (accepts(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

SweepOutput run_sweep(const RoadScenario &base, const SweepSpec &spec, const SolverParams &params, unsigned threads)
{
    spec.validate();
    params.validate();

    struct Task
    {
        std::size_t value_idx;
        std::size_t rep;
        std::size_t policy_idx; // == policies.size() for the boundary task
    };
    std::vector<Task> tasks;
    const std::size_t np = spec.policies.size();
    for (std::size_t v = 0; v < spec.values.size(); ++v)
        for (std::size_t r = 0; r < spec.repetitions; ++r)
            for (std::size_t p = 0; p <= np; ++p)
                tasks.push_back({v, r, p});

    SweepOutput out;
    out.rows.resize(spec.values.size() * np * spec.repetitions);
    out.boundary.resize(spec.values.size() * spec.repetitions);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            const Task &t = tasks[i];
            try
            {
                const double value = spec.values[t.value_idx];
                RoadScenario s = apply_axis(base, spec.axis, value, spec.replicate_offset_m);
                s.seed = base.seed + t.rep;

                if (t.policy_idx == np)
                {
                    out.boundary[t.value_idx * spec.repetitions + t.rep] = {value, s.seed,
                                                                            alg1_min_feasible_p_max(s, params)};
                    continue;
                }

                SweepRow row{value, spec.policies[t.policy_idx], s.seed, std::numeric_limits<double>::quiet_NaN(),
                             false};
                try
                {
                    const SlotRecord rec = run_slot(s, 0, row.policy, params);
                    rec.result.validate(rec.links, s.p_max_w);
                    row.max_delay_s = rec.result.max_delay;
                    row.feasible = rec.result.feasible();
                }
                catch (const InfeasibleError &e)
                {
                    spdlog::debug("sweep {}={} {} seed {}: {}", to_string(spec.axis), value, to_string(row.policy),
                                  s.seed, e.what());
                }
                out.rows[(t.value_idx * np + t.policy_idx) * spec.repetitions + t.rep] = row;
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(tasks.size());
                return;
            }
        }
    };

    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < n_threads; ++i)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

void write_sweep_csv(const SweepOutput &sweep, std::ostream &out)
{
    out << "axis_value,policy,seed,max_delay_s,feasible\n";
    for (const auto &r : sweep.rows)
        out << fmt::format("{:.17g},{},{},{:.17g},{}\n", r.axis_value, to_string(r.policy), r.seed, r.max_delay_s,
                           r.feasible ? 1 : 0);
    out.flush();
}

void write_boundary_csv(const SweepOutput &sweep, std::ostream &out)
{
    out << "axis_value,seed,alg1_min_p_max_w\n";
    for (const auto &b : sweep.boundary)
        out << fmt::format("{:.17g},{},{:.17g}\n", b.axis_value, b.seed, b.alg1_min_p_max_w);
    out.flush();
}

std::vector<BracketStep> run_trace(const RoadScenario &scenario, const SolverParams &params)
{
    return run_slot(scenario, 0, Policy::alg1, params).result.bracket_trace;
}

void write_trace_csv(const std::vector<BracketStep> &trace, std::ostream &out)
{
    out << "iter,t_lower_s,t_upper_s\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << fmt::format("{},{:.17g},{:.17g}\n", i, trace[i].t_lower, trace[i].t_upper);
    out.flush();
}

} // namespace dfrc
