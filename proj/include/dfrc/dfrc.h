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

/*
 * C interface to the dfrc library. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every call that can
 * fail returns a dfrc_status; the message of the most recent failure on the
 * calling thread is available from dfrc_last_error().
 */

#ifndef DFRC_DFRC_H
#define DFRC_DFRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(DFRC_BUILDING_LIBRARY)
#define DFRC_API __attribute__((visibility("default")))
#else
#define DFRC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* DFRC_E_CONFIG and DFRC_E_INFEASIBLE double as the CLI exit codes. */
typedef enum dfrc_status
{
    DFRC_OK = 0,
    DFRC_E_INVALID_ARGUMENT = 1,
    DFRC_E_CONFIG = 2,
    DFRC_E_INFEASIBLE = 3,
    DFRC_E_DOMAIN = 4,
    DFRC_E_CONTRACT = 5,
    DFRC_E_CONVERGENCE = 6,
    DFRC_E_IO = 7,
    DFRC_E_INTERNAL = 8
} dfrc_status;

typedef struct dfrc_scenario dfrc_scenario;
typedef struct dfrc_allocation dfrc_allocation;

typedef struct dfrc_solver_params
{
    double eps_delay;    /* s */
    double eps_power;    /* W */
    double delta_p_init; /* W; <= 0 selects p_max / (2K) */
    uint64_t max_iters;
} dfrc_solver_params;

DFRC_API const char *dfrc_version(void);
DFRC_API const char *dfrc_status_string(dfrc_status status);

/* Thread-local details of the last failed call */
DFRC_API const char *dfrc_last_error(void);
DFRC_API int dfrc_last_error_line(void);    /* config errors, 0 if unknown */
DFRC_API double dfrc_last_deficit_w(void);  /* infeasibility errors */

/* trace, debug, info, warn, error, critical, off */
DFRC_API dfrc_status dfrc_set_log_level(const char *level);

DFRC_API void dfrc_solver_params_default(dfrc_solver_params *params);

DFRC_API dfrc_status dfrc_scenario_load(const char *path, dfrc_scenario **out);
DFRC_API dfrc_status dfrc_scenario_parse(const char *yaml_text, dfrc_scenario **out);
DFRC_API void dfrc_scenario_free(dfrc_scenario *scenario);
DFRC_API dfrc_status dfrc_scenario_set_seed(dfrc_scenario *scenario, uint64_t seed);
DFRC_API dfrc_status dfrc_scenario_vehicle_count(const dfrc_scenario *scenario, size_t *count);
DFRC_API dfrc_status dfrc_scenario_slot_count(const dfrc_scenario *scenario, size_t *count);

/* policy: "epa", "closed_form", "alg1" or "alg2"; params may be NULL for defaults */
DFRC_API dfrc_status dfrc_scenario_solve_slot(const dfrc_scenario *scenario, size_t slot, const char *policy,
                                              const dfrc_solver_params *params, dfrc_allocation **out);

/* Allocation on raw link coefficients. power_floor may be NULL for no floors.
 * policy additionally accepts "oracle_grid" (2000 grid steps, n <= 4). */
DFRC_API dfrc_status dfrc_allocate(const char *policy, size_t n, const double *a_coef, const double *b_coef,
                                   const double *power_floor, double p_max, const dfrc_solver_params *params,
                                   dfrc_allocation **out);
DFRC_API dfrc_status dfrc_check_feasible(size_t n, const double *power_floor, double p_max, int *feasible,
                                         double *deficit_w);

DFRC_API size_t dfrc_allocation_size(const dfrc_allocation *alloc);
DFRC_API dfrc_status dfrc_allocation_powers(const dfrc_allocation *alloc, double *out, size_t n);
DFRC_API dfrc_status dfrc_allocation_delays(const dfrc_allocation *alloc, double *out, size_t n);
DFRC_API double dfrc_allocation_max_delay(const dfrc_allocation *alloc);
DFRC_API size_t dfrc_allocation_iterations(const dfrc_allocation *alloc);
DFRC_API int dfrc_allocation_converged(const dfrc_allocation *alloc);
DFRC_API int dfrc_allocation_feasible(const dfrc_allocation *alloc);
/* alg1 bracket trajectory; returns the number of steps, copies up to n of them */
DFRC_API size_t dfrc_allocation_bracket(const dfrc_allocation *alloc, double *t_lower, double *t_upper, size_t n);
DFRC_API void dfrc_allocation_free(dfrc_allocation *alloc);

/* CSV front ends. out_path "-" writes to stdout. */
DFRC_API dfrc_status dfrc_run_csv(const dfrc_scenario *scenario, const char *policy,
                                  const dfrc_solver_params *params, const char *out_path);
/* Also writes the alg1 feasibility boundary next to out_path (x.csv -> x_boundary.csv). */
DFRC_API dfrc_status dfrc_sweep_csv(const dfrc_scenario *scenario, const char *sweep_path,
                                    const dfrc_solver_params *params, const char *out_path);
DFRC_API dfrc_status dfrc_trace_csv(const dfrc_scenario *scenario, const dfrc_solver_params *params,
                                    const char *out_path);

#ifdef __cplusplus
}
#endif

#endif
