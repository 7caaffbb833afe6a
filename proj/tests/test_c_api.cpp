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

#include <doctest.h>

#include "dfrc/dfrc.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace
{

struct AllocationFree
{
    void operator()(dfrc_allocation *a) const { dfrc_allocation_free(a); }
};
struct ScenarioFree
{
    void operator()(dfrc_scenario *s) const { dfrc_scenario_free(s); }
};
using Allocation = std::unique_ptr<dfrc_allocation, AllocationFree>;
using Scenario = std::unique_ptr<dfrc_scenario, ScenarioFree>;

std::string config(const char *name)
{
    return std::string(DFRC_CONFIG_DIR) + "/" + name;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "dfrc_c_api_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("library metadata")
{
    CHECK(std::string(dfrc_version()) == "1.0.0");
    CHECK(std::string(dfrc_status_string(DFRC_E_INFEASIBLE)).size() > 0);
    CHECK(dfrc_set_log_level("warn") == DFRC_OK);
    CHECK(dfrc_set_log_level("loud") == DFRC_E_INVALID_ARGUMENT);

    dfrc_solver_params p;
    dfrc_solver_params_default(&p);
    CHECK(p.eps_delay == 1e-9);
    CHECK(p.eps_power == 1e-9);
    CHECK(p.delta_p_init <= 0.0);
}

TEST_CASE("raw allocation")
{
    const double a[] = {1.0, 1.0};
    const double b[] = {1.0, 3.0};
    const double floors[] = {0.0, 0.0};

    dfrc_allocation *raw = nullptr;
    REQUIRE(dfrc_allocate("alg1", 2, a, b, floors, 4.0, nullptr, &raw) == DFRC_OK);
    Allocation alloc(raw);
    REQUIRE(dfrc_allocation_size(alloc.get()) == 2);
    double p[2];
    CHECK(dfrc_allocation_powers(alloc.get(), p, 2) == DFRC_OK);
    CHECK(p[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-9));
    double t[2];
    CHECK(dfrc_allocation_delays(alloc.get(), t, 2) == DFRC_OK);
    CHECK(dfrc_allocation_max_delay(alloc.get()) == std::max(t[0], t[1]));
    CHECK(dfrc_allocation_converged(alloc.get()) == 1);
    CHECK(dfrc_allocation_feasible(alloc.get()) == 1);
    CHECK(dfrc_allocation_powers(alloc.get(), p, 1) == DFRC_E_INVALID_ARGUMENT);

    const std::size_t steps = dfrc_allocation_bracket(alloc.get(), nullptr, nullptr, 0);
    CHECK(steps == dfrc_allocation_iterations(alloc.get()) + 1);
    std::vector<double> lo(steps), hi(steps);
    CHECK(dfrc_allocation_bracket(alloc.get(), lo.data(), hi.data(), steps) == steps);
    CHECK(hi.back() - lo.back() <= 1e-9);

    for (const char *policy : {"epa", "closed_form", "alg2", "oracle_grid"})
    {
        dfrc_allocation *other = nullptr;
        CHECK(dfrc_allocate(policy, 2, a, b, floors, 4.0, nullptr, &other) == DFRC_OK);
        dfrc_allocation_free(other);
    }
}

TEST_CASE("error reporting")
{
    const double a[] = {1.0, 2.0};
    const double b[] = {1.0, 3.0};
    const double floors[] = {3.0, 2.0};
    dfrc_allocation *raw = nullptr;

    CHECK(dfrc_allocate("alg2", 2, a, b, floors, 4.0, nullptr, &raw) == DFRC_E_INFEASIBLE);
    CHECK(raw == nullptr);
    CHECK(dfrc_last_deficit_w() == doctest::Approx(1.0));
    CHECK(std::strlen(dfrc_last_error()) > 0);

    CHECK(dfrc_allocate("closed_form", 2, a, b, nullptr, 4.0, nullptr, &raw) == DFRC_E_CONTRACT);
    CHECK(dfrc_allocate("greedy", 2, a, b, nullptr, 4.0, nullptr, &raw) == DFRC_E_DOMAIN);
    CHECK(dfrc_allocate("alg1", 2, a, nullptr, nullptr, 4.0, nullptr, &raw) == DFRC_E_INVALID_ARGUMENT);
    CHECK(dfrc_allocate("alg1", 2, a, b, nullptr, 4.0, nullptr, nullptr) == DFRC_E_INVALID_ARGUMENT);
    CHECK(dfrc_allocate("alg1", 2, a, b, nullptr, -1.0, nullptr, &raw) == DFRC_E_DOMAIN);

    dfrc_solver_params p;
    dfrc_solver_params_default(&p);
    p.max_iters = 2;
    const double bb[] = {1.0, 30.0};
    CHECK(dfrc_allocate("alg1", 2, a, bb, nullptr, 4.0, &p, &raw) == DFRC_E_CONVERGENCE);

    int feasible = -1;
    double deficit = 0.0;
    CHECK(dfrc_check_feasible(2, floors, 4.0, &feasible, &deficit) == DFRC_OK);
    CHECK(feasible == 0);
    CHECK(deficit == doctest::Approx(1.0));

    dfrc_scenario *s = nullptr;
    CHECK(dfrc_scenario_parse("road: [1\n", &s) == DFRC_E_CONFIG);
    CHECK(dfrc_last_error_line() > 0);
    CHECK(dfrc_scenario_load("/nonexistent.yaml", &s) == DFRC_E_CONFIG);
    CHECK(s == nullptr);

    dfrc_allocation_free(nullptr);
    dfrc_scenario_free(nullptr);
}

TEST_CASE("scenario handles")
{
    dfrc_scenario *raw = nullptr;
    REQUIRE(dfrc_scenario_load(config("road_defaults.yaml").c_str(), &raw) == DFRC_OK);
    Scenario s(raw);
    std::size_t n = 0;
    CHECK(dfrc_scenario_vehicle_count(s.get(), &n) == DFRC_OK);
    CHECK(n == 4);
    CHECK(dfrc_scenario_slot_count(s.get(), &n) == DFRC_OK);
    CHECK(n == 5);
    CHECK(dfrc_scenario_set_seed(s.get(), 7) == DFRC_OK);

    dfrc_allocation *alloc = nullptr;
    REQUIRE(dfrc_scenario_solve_slot(s.get(), 0, "alg2", nullptr, &alloc) == DFRC_OK);
    CHECK(dfrc_allocation_size(alloc) == 4);
    CHECK(dfrc_allocation_max_delay(alloc) > 1e-7);
    CHECK(dfrc_allocation_max_delay(alloc) < 1e-4);
    dfrc_allocation_free(alloc);

    CHECK(dfrc_scenario_solve_slot(s.get(), 5, "alg2", nullptr, &alloc) == DFRC_E_DOMAIN);
    CHECK(dfrc_scenario_solve_slot(s.get(), 0, "oracle_grid", nullptr, &alloc) == DFRC_E_DOMAIN);
}

TEST_CASE("csv front ends")
{
    dfrc_scenario *raw = nullptr;
    REQUIRE(dfrc_scenario_load(config("road_defaults.yaml").c_str(), &raw) == DFRC_OK);
    Scenario s(raw);

    const auto run = scratch("run.csv");
    CHECK(dfrc_run_csv(s.get(), "alg1", nullptr, run.c_str()) == DFRC_OK);
    CHECK(slurp(run).rfind("slot,vehicle,power_w", 0) == 0);

    const auto sweep = scratch("sweep.csv");
    CHECK(dfrc_sweep_csv(s.get(), config("sweep_p_max.yaml").c_str(), nullptr, sweep.c_str()) == DFRC_OK);
    CHECK(slurp(sweep).rfind("axis_value,policy,seed,max_delay_s,feasible", 0) == 0);
    CHECK(slurp(scratch("sweep_boundary.csv")).rfind("axis_value,seed,alg1_min_p_max_w", 0) == 0);

    const auto trace = scratch("trace.csv");
    CHECK(dfrc_trace_csv(s.get(), nullptr, trace.c_str()) == DFRC_OK);
    CHECK(slurp(trace).rfind("iter,t_lower_s,t_upper_s", 0) == 0);

    CHECK(dfrc_run_csv(s.get(), "alg1", nullptr, "/nonexistent/dir/out.csv") == DFRC_E_IO);
}
