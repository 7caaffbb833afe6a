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

#include "dfrc/dfrc.h"

#include "dfrc/allocate.hpp"
#include "dfrc/commands.hpp"
#include "dfrc/config.hpp"
#include "dfrc/errors.hpp"
#include "dfrc/scenario.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <new>
#include <string>

struct dfrc_scenario
{
    dfrc::RoadScenario value;
};

struct dfrc_allocation
{
    dfrc::AllocationResult value;
};

namespace
{

struct LastError
{
    std::string message;
    int line = 0;
    double deficit_w = 0.0;
};

thread_local LastError last_error;

dfrc_status set_error(dfrc_status status, const std::string &message, int line = 0, double deficit = 0.0)
{
    last_error = {message, line, deficit};
    return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename Fn>
dfrc_status guarded(Fn &&fn)
{
    try
    {
        fn();
        last_error = {};
        return DFRC_OK;
    }
    catch (const dfrc::ConfigError &e)
    {
        return set_error(DFRC_E_CONFIG, e.what(), e.line());
    }
    catch (const dfrc::InfeasibleError &e)
    {
        return set_error(DFRC_E_INFEASIBLE, e.what(), 0, e.deficit_w());
    }
    catch (const dfrc::DomainError &e)
    {
        return set_error(DFRC_E_DOMAIN, e.what());
    }
    catch (const dfrc::ContractError &e)
    {
        return set_error(DFRC_E_CONTRACT, e.what());
    }
    catch (const dfrc::ConvergenceError &e)
    {
        return set_error(DFRC_E_CONVERGENCE, e.what());
    }
    catch (const std::ios_base::failure &e)
    {
        return set_error(DFRC_E_IO, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return set_error(DFRC_E_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return set_error(DFRC_E_INTERNAL, e.what());
    }
    catch (...)
    {
        return set_error(DFRC_E_INTERNAL, "unknown error");
    }
}

dfrc::SolverParams to_params(const dfrc_solver_params *p)
{
    dfrc::SolverParams out;
    if (!p)
        return out;
    out.eps_delay = p->eps_delay;
    out.eps_power = p->eps_power;
    if (p->delta_p_init > 0.0)
        out.delta_p_init = p->delta_p_init;
    out.max_iters = static_cast<std::size_t>(p->max_iters);
    return out;
}

dfrc::Policy any_policy(const char *name)
{
    if (!name)
        throw dfrc::DomainError("policy name is null");
    if (std::string(name) == "oracle_grid")
        return dfrc::Policy::oracle_grid;
    return dfrc::parse_policy(name);
}

// Runs writer against stdout for "-" or a freshly truncated file.
template <typename Fn>
void with_output(const char *path, Fn &&writer)
{
    if (!path)
        throw dfrc::DomainError("output path is null");
    if (std::string(path) == "-")
    {
        writer(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::ios_base::failure(std::string("cannot open '") + path + "' for writing");
    writer(out);
    if (!out)
        throw std::ios_base::failure(std::string("write to '") + path + "' failed");
}

std::string boundary_path(const std::string &out_path)
{
    const std::string ext = ".csv";
    if (out_path.size() > ext.size() && out_path.compare(out_path.size() - ext.size(), ext.size(), ext) == 0)
        return out_path.substr(0, out_path.size() - ext.size()) + "_boundary.csv";
    return out_path + ".boundary.csv";
}

} // namespace

extern "C" {

const char *dfrc_version(void)
{
    return "1.0.0";
}

const char *dfrc_status_string(dfrc_status status)
{
    switch (status)
    {
    case DFRC_OK:
        return "ok";
    case DFRC_E_INVALID_ARGUMENT:
        return "invalid argument";
    case DFRC_E_CONFIG:
        return "configuration error";
    case DFRC_E_INFEASIBLE:
        return "infeasible";
    case DFRC_E_DOMAIN:
        return "domain error";
    case DFRC_E_CONTRACT:
        return "contract violation";
    case DFRC_E_CONVERGENCE:
        return "no convergence";
    case DFRC_E_IO:
        return "i/o error";
    case DFRC_E_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *dfrc_last_error(void)
{
    return last_error.message.c_str();
}

int dfrc_last_error_line(void)
{
    return last_error.line;
}

double dfrc_last_deficit_w(void)
{
    return last_error.deficit_w;
}

dfrc_status dfrc_set_log_level(const char *level)
{
    if (!level)
        return set_error(DFRC_E_INVALID_ARGUMENT, "log level is null");
    const auto parsed = spdlog::level::from_str(level);
    if (parsed == spdlog::level::off && std::string(level) != "off")
        return set_error(DFRC_E_INVALID_ARGUMENT, std::string("unknown log level '") + level + "'");
    spdlog::set_level(parsed);
    return DFRC_OK;
}

void dfrc_solver_params_default(dfrc_solver_params *params)
{
    if (!params)
        return;
    const dfrc::SolverParams d;
    params->eps_delay = d.eps_delay;
    params->eps_power = d.eps_power;
    params->delta_p_init = 0.0;
    params->max_iters = d.max_iters;
}

dfrc_status dfrc_scenario_load(const char *path, dfrc_scenario **out)
{
    if (!path || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new dfrc_scenario{dfrc::load_scenario(path)}; });
}

dfrc_status dfrc_scenario_parse(const char *yaml_text, dfrc_scenario **out)
{
    if (!yaml_text || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new dfrc_scenario{dfrc::parse_scenario(yaml_text)}; });
}

void dfrc_scenario_free(dfrc_scenario *scenario)
{
    delete scenario;
}

dfrc_status dfrc_scenario_set_seed(dfrc_scenario *scenario, uint64_t seed)
{
    if (!scenario)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null scenario");
    scenario->value.seed = seed;
    return DFRC_OK;
}

dfrc_status dfrc_scenario_vehicle_count(const dfrc_scenario *scenario, size_t *count)
{
    if (!scenario || !count)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *count = scenario->value.vehicles.size();
    return DFRC_OK;
}

dfrc_status dfrc_scenario_slot_count(const dfrc_scenario *scenario, size_t *count)
{
    if (!scenario || !count)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *count = scenario->value.n_slots;
    return DFRC_OK;
}

dfrc_status dfrc_scenario_solve_slot(const dfrc_scenario *scenario, size_t slot, const char *policy,
                                     const dfrc_solver_params *params, dfrc_allocation **out)
{
    if (!scenario || !policy || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto rec = dfrc::run_slot(scenario->value, slot, dfrc::parse_policy(policy), to_params(params));
        *out = new dfrc_allocation{std::move(rec.result)};
    });
}

dfrc_status dfrc_allocate(const char *policy, size_t n, const double *a_coef, const double *b_coef,
                          const double *power_floor, double p_max, const dfrc_solver_params *params,
                          dfrc_allocation **out)
{
    if (!policy || !a_coef || !b_coef || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<dfrc::LinkCoefficients> links(n);
        for (size_t k = 0; k < n; ++k)
            links[k] = {a_coef[k], b_coef[k], power_floor ? power_floor[k] : 0.0, k};
        *out = new dfrc_allocation{dfrc::allocate(any_policy(policy), links, p_max, to_params(params))};
    });
}

dfrc_status dfrc_check_feasible(size_t n, const double *power_floor, double p_max, int *feasible, double *deficit_w)
{
    if (!power_floor || !feasible)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<dfrc::LinkCoefficients> links(n);
        for (size_t k = 0; k < n; ++k)
            links[k].power_floor = power_floor[k];
        const auto verdict = dfrc::check_feasible(links, p_max);
        *feasible = verdict.feasible ? 1 : 0;
        if (deficit_w)
            *deficit_w = verdict.deficit_w;
    });
}

size_t dfrc_allocation_size(const dfrc_allocation *alloc)
{
    return alloc ? alloc->value.powers.size() : 0;
}

dfrc_status dfrc_allocation_powers(const dfrc_allocation *alloc, double *out, size_t n)
{
    if (!alloc || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    if (n < alloc->value.powers.size())
        return set_error(DFRC_E_INVALID_ARGUMENT, "output buffer too small");
    std::copy(alloc->value.powers.begin(), alloc->value.powers.end(), out);
    return DFRC_OK;
}

dfrc_status dfrc_allocation_delays(const dfrc_allocation *alloc, double *out, size_t n)
{
    if (!alloc || !out)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    if (n < alloc->value.delays.size())
        return set_error(DFRC_E_INVALID_ARGUMENT, "output buffer too small");
    std::copy(alloc->value.delays.begin(), alloc->value.delays.end(), out);
    return DFRC_OK;
}

double dfrc_allocation_max_delay(const dfrc_allocation *alloc)
{
    return alloc ? alloc->value.max_delay : 0.0;
}

size_t dfrc_allocation_iterations(const dfrc_allocation *alloc)
{
    return alloc ? alloc->value.iterations : 0;
}

int dfrc_allocation_converged(const dfrc_allocation *alloc)
{
    return alloc && alloc->value.converged ? 1 : 0;
}

int dfrc_allocation_feasible(const dfrc_allocation *alloc)
{
    return alloc && alloc->value.feasible() ? 1 : 0;
}

size_t dfrc_allocation_bracket(const dfrc_allocation *alloc, double *t_lower, double *t_upper, size_t n)
{
    if (!alloc)
        return 0;
    const auto &trace = alloc->value.bracket_trace;
    for (size_t i = 0; i < trace.size() && i < n; ++i)
    {
        if (t_lower)
            t_lower[i] = trace[i].t_lower;
        if (t_upper)
            t_upper[i] = trace[i].t_upper;
    }
    return trace.size();
}

void dfrc_allocation_free(dfrc_allocation *alloc)
{
    delete alloc;
}

dfrc_status dfrc_run_csv(const dfrc_scenario *scenario, const char *policy, const dfrc_solver_params *params,
                         const char *out_path)
{
    if (!scenario || !policy || !out_path)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto pol = dfrc::parse_policy(policy);
        with_output(out_path, [&](std::ostream &os) { dfrc::write_run_csv(scenario->value, pol, to_params(params), os); });
    });
}

dfrc_status dfrc_sweep_csv(const dfrc_scenario *scenario, const char *sweep_path, const dfrc_solver_params *params,
                           const char *out_path)
{
    if (!scenario || !sweep_path || !out_path)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto spec = dfrc::load_sweep(sweep_path);
        const auto result = dfrc::run_sweep(scenario->value, spec, to_params(params));
        with_output(out_path, [&](std::ostream &os) { dfrc::write_sweep_csv(result, os); });
        if (std::string(out_path) == "-")
        {
            std::cout << '\n';
            dfrc::write_boundary_csv(result, std::cout);
        }
        else
        {
            const auto path = boundary_path(out_path);
            with_output(path.c_str(), [&](std::ostream &os) { dfrc::write_boundary_csv(result, os); });
        }
    });
}

dfrc_status dfrc_trace_csv(const dfrc_scenario *scenario, const dfrc_solver_params *params, const char *out_path)
{
    if (!scenario || !out_path)
        return set_error(DFRC_E_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto trace = dfrc::run_trace(scenario->value, to_params(params));
        with_output(out_path, [&](std::ostream &os) { dfrc::write_trace_csv(trace, os); });
    });
}

} // extern "C"
