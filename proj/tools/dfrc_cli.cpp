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

// Command-line front end. Talks to the library only through the C interface.
//
//   dfrc run   --config scenario.yaml --policy alg1 --out run.csv
//   dfrc sweep --config scenario.yaml --sweep sweep.yaml --out sweep.csv
//   dfrc trace --config scenario.yaml --out trace.csv
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible slot, 1 anything else.
// DFRC_LOG_LEVEL (trace, debug, info, warn, error, off) controls log verbosity.

#include "dfrc/dfrc.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>

namespace
{

struct ScenarioDeleter
{
    void operator()(dfrc_scenario *s) const { dfrc_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<dfrc_scenario, ScenarioDeleter>;

int report(dfrc_status status)
{
    switch (status)
    {
    case DFRC_OK:
        return 0;
    case DFRC_E_CONFIG:
        std::fprintf(stderr, "config error: %s\n", dfrc_last_error());
        return 2;
    case DFRC_E_INFEASIBLE:
        std::fprintf(stderr, "infeasible: %s (deficit %.9g W)\n", dfrc_last_error(), dfrc_last_deficit_w());
        return 3;
    default:
        std::fprintf(stderr, "%s: %s\n", dfrc_status_string(status), dfrc_last_error());
        return 1;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Min-max latency power allocation for a DFRC roadside unit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dfrc_version()));

    std::string config_path;
    std::string out_path = "-";
    std::string policy = "alg1";
    std::string sweep_path;
    std::optional<std::uint64_t> seed;
    dfrc_solver_params params;
    dfrc_solver_params_default(&params);

    const auto common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "Scenario YAML file")->required();
        cmd->add_option("--out", out_path, "Output CSV path, '-' for stdout")->capture_default_str();
        cmd->add_option("--seed", seed, "Override the scenario seed");
        cmd->add_option("--eps-delay", params.eps_delay, "alg1 termination width in seconds")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--eps-power", params.eps_power, "alg2 termination step in watts")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };

    auto *run = app.add_subcommand("run", "Solve every slot of a scenario");
    common(run);
    run->add_option("--policy", policy, "epa, closed_form, alg1 or alg2")
        ->capture_default_str()
        ->check(CLI::IsMember({"epa", "closed_form", "alg1", "alg2"}));

    auto *sweep = app.add_subcommand("sweep", "Sweep one parameter over slot 0");
    common(sweep);
    sweep->add_option("--sweep", sweep_path, "Sweep specification YAML file")->required();

    auto *trace = app.add_subcommand("trace", "alg1 bracket trajectory on slot 0");
    common(trace);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (const char *level = std::getenv("DFRC_LOG_LEVEL"))
        if (dfrc_set_log_level(level) != DFRC_OK)
            std::fprintf(stderr, "warning: %s\n", dfrc_last_error());

    dfrc_scenario *raw = nullptr;
    if (const auto status = dfrc_scenario_load(config_path.c_str(), &raw); status != DFRC_OK)
        return report(status);
    ScenarioPtr scenario(raw);
    if (seed)
        dfrc_scenario_set_seed(scenario.get(), *seed);

    if (*run)
        return report(dfrc_run_csv(scenario.get(), policy.c_str(), &params, out_path.c_str()));
    if (*sweep)
        return report(dfrc_sweep_csv(scenario.get(), sweep_path.c_str(), &params, out_path.c_str()));
    return report(dfrc_trace_csv(scenario.get(), &params, out_path.c_str()));
}
