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

#include "dfrc/config.hpp"
#include "dfrc/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace dfrc
{

namespace
{

[[noreturn]] void fail(const YAML::Node &node, const std::string &what)
{
    const auto mark = node.Mark();
    if (mark.is_null())
        throw ConfigError(what);
    throw ConfigError("line " + std::to_string(mark.line + 1) + ", column " + std::to_string(mark.column + 1) + ": " +
                          what,
                      mark.line + 1, mark.column + 1);
}

void expect_map(const YAML::Node &node, const std::string &name)
{
    if (!node.IsMap())
        fail(node, "'" + name + "' must be a mapping");
}

void reject_unknown(const YAML::Node &node, const std::string &section, std::initializer_list<std::string_view> known)
{
    for (const auto &kv : node)
    {
        const auto key = kv.first.as<std::string>();
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail(kv.first, "unknown key '" + key + "' in " + section);
    }
}

YAML::Node require(const YAML::Node &parent, const char *key, const std::string &section)
{
    const YAML::Node child = parent[key];
    if (!child)
        fail(parent, "missing required key '" + std::string(key) + "' in " + section);
    return child;
}

template <typename T>
T scalar(const YAML::Node &node, const std::string &key)
{
    if (!node.IsScalar())
        fail(node, "'" + key + "' must be a scalar");
    try
    {
        return node.as<T>();
    }
    catch (const YAML::Exception &)
    {
        fail(node, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
    }
}

double real(const YAML::Node &node, const std::string &key)
{
    const double x = scalar<double>(node, key);
    if (!std::isfinite(x))
        fail(node, "'" + key + "' must be finite");
    return x;
}

double positive(const YAML::Node &node, const std::string &key)
{
    const double x = real(node, key);
    if (!(x > 0.0))
        fail(node, "'" + key + "' must be positive");
    return x;
}

std::size_t count(const YAML::Node &node, const std::string &key)
{
    const double x = real(node, key);
    if (x < 1.0 || x != std::floor(x))
        fail(node, "'" + key + "' must be a positive integer");
    return static_cast<std::size_t>(x);
}

template <typename Fn>
void optional(const YAML::Node &parent, const char *key, Fn &&apply)
{
    if (const YAML::Node child = parent[key])
        apply(child);
}

std::array<double, 4> quad(const YAML::Node &node, const std::string &key, bool require_positive)
{
    if (!node.IsSequence() || node.size() != 4)
        fail(node, "'" + key + "' must be a list of 4 numbers");
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i)
    {
        out[i] = real(node[i], key);
        if (require_positive ? !(out[i] > 0.0) : out[i] < 0.0)
            fail(node[i], "'" + key + "' entries must be " + (require_positive ? "positive" : "nonnegative"));
    }
    return out;
}

cdouble complex_entry(const YAML::Node &node, const std::string &key)
{
    if (node.IsScalar())
        return {real(node, key), 0.0};
    if (node.IsSequence() && node.size() == 2)
        return {real(node[0], key), real(node[1], key)};
    fail(node, "'" + key + "' entries must be a number or a [re, im] pair");
}

PcrbModel parse_pcrb(const YAML::Node &node)
{
    expect_map(node, "pcrb");
    const auto mode = scalar<std::string>(require(node, "mode", "pcrb"), "mode");
    if (mode == "direct")
    {
        reject_unknown(node, "pcrb (direct mode)", {"mode", "b1_sq", "b2_sq", "eigs"});
        PcrbModel m;
        m.b1_sq = quad(require(node, "b1_sq", "pcrb"), "b1_sq", false);
        m.b2_sq = quad(require(node, "b2_sq", "pcrb"), "b2_sq", false);
        m.eigs = quad(require(node, "eigs", "pcrb"), "eigs", false);
        return m;
    }
    if (mode == "matrix")
    {
        reject_unknown(node, "pcrb (matrix mode)", {"mode", "prior_std", "sensitivity"});
        const auto prior_std = quad(require(node, "prior_std", "pcrb"), "prior_std", true);
        const YAML::Node g = require(node, "sensitivity", "pcrb");
        if (!g.IsSequence() || g.size() != 4)
            fail(g, "'sensitivity' must be a 4x4 matrix (list of 4 rows)");
        Eigen::Matrix4cd sens;
        for (std::size_t r = 0; r < 4; ++r)
        {
            if (!g[r].IsSequence() || g[r].size() != 4)
                fail(g[r], "'sensitivity' rows must have 4 entries");
            for (std::size_t c = 0; c < 4; ++c)
                sens(static_cast<int>(r), static_cast<int>(c)) = complex_entry(g[r][c], "sensitivity");
        }
        try
        {
            return build_pcrb_model(synthetic_prior(prior_std), observed_fisher_from_sensitivity(sens));
        }
        catch (const DomainError &e)
        {
            fail(node, e.what());
        }
    }
    fail(node["mode"], "pcrb mode must be 'direct' or 'matrix', got '" + mode + "'");
}

VehicleSpec parse_vehicle(const YAML::Node &node, const std::optional<PcrbModel> &pcrb_default)
{
    expect_map(node, "vehicles[]");
    reject_unknown(node, "vehicle", {"position_m", "speed_mps", "payload_bits", "pcrb"});
    VehicleSpec v;
    v.position_m = real(require(node, "position_m", "vehicle"), "position_m");
    v.speed_mps = real(require(node, "speed_mps", "vehicle"), "speed_mps");
    v.payload_bits = default_payload_bits;
    optional(node, "payload_bits", [&](const YAML::Node &n) { v.payload_bits = positive(n, "payload_bits"); });
    if (const YAML::Node p = node["pcrb"])
        v.pcrb = parse_pcrb(p);
    else if (pcrb_default)
        v.pcrb = *pcrb_default;
    else
        fail(node, "vehicle has no 'pcrb' block and no top-level 'pcrb_default' is given");
    return v;
}

YAML::Node load_yaml(const std::string &text)
{
    try
    {
        return YAML::Load(text);
    }
    catch (const YAML::ParserException &e)
    {
        throw ConfigError("line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) +
                              ": " + e.msg,
                          e.mark.line + 1, e.mark.column + 1);
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SweepAxis parse_axis(const YAML::Node &node)
{
    const auto name = scalar<std::string>(node, "axis");
    for (auto axis : {SweepAxis::p_max, SweepAxis::n_vehicles, SweepAxis::n_tx, SweepAxis::n_rx,
                      SweepAxis::n_veh_antennas})
        if (name == to_string(axis))
            return axis;
    fail(node, "unknown sweep axis '" + name + "' (expected p_max, n_vehicles, n_tx, n_rx or n_veh_antennas)");
}

} // namespace

RoadScenario parse_scenario(const std::string &yaml_text)
{
    const YAML::Node root = load_yaml(yaml_text);
    if (!root.IsMap())
        throw ConfigError("scenario file must be a YAML mapping", 1, 1);
    reject_unknown(root, "scenario",
                   {"road", "power", "array", "thresholds", "prediction", "seed", "pcrb_default", "vehicles"});

    RoadScenario s;

    const YAML::Node road = require(root, "road", "scenario");
    expect_map(road, "road");
    reject_unknown(road, "road", {"rsu_offset_m", "slot_s", "n_slots", "deadline_s"});
    s.rsu_offset_m = positive(require(road, "rsu_offset_m", "road"), "rsu_offset_m");
    s.slot_s = positive(require(road, "slot_s", "road"), "slot_s");
    optional(road, "n_slots", [&](const YAML::Node &n) { s.n_slots = count(n, "n_slots"); });
    optional(road, "deadline_s", [&](const YAML::Node &n) { s.deadline_s = positive(n, "deadline_s"); });

    const YAML::Node power = require(root, "power", "scenario");
    expect_map(power, "power");
    reject_unknown(power, "power", {"p_max_w"});
    s.p_max_w = positive(require(power, "p_max_w", "power"), "p_max_w");

    const YAML::Node array = require(root, "array", "scenario");
    expect_map(array, "array");
    reject_unknown(array, "array",
                   {"n_tx", "n_rx", "n_veh", "carrier_hz", "bandwidth_hz", "noise_comm_w", "noise_radar_w",
                    "alpha_const"});
    s.arrays.n_tx = count(require(array, "n_tx", "array"), "n_tx");
    s.arrays.n_rx = count(require(array, "n_rx", "array"), "n_rx");
    s.arrays.n_veh = count(require(array, "n_veh", "array"), "n_veh");
    s.arrays.carrier_hz = positive(require(array, "carrier_hz", "array"), "carrier_hz");
    s.arrays.bandwidth_hz = positive(require(array, "bandwidth_hz", "array"), "bandwidth_hz");
    s.arrays.noise_comm = positive(require(array, "noise_comm_w", "array"), "noise_comm_w");
    s.arrays.noise_radar = positive(require(array, "noise_radar_w", "array"), "noise_radar_w");
    optional(array, "alpha_const", [&](const YAML::Node &n) { s.arrays.alpha_const = positive(n, "alpha_const"); });

    const YAML::Node thr = require(root, "thresholds", "scenario");
    expect_map(thr, "thresholds");
    reject_unknown(thr, "thresholds", {"xi_theta_rad2", "xi_dist_m2"});
    s.thresholds.xi_theta = positive(require(thr, "xi_theta_rad2", "thresholds"), "xi_theta_rad2");
    s.thresholds.xi_dist = positive(require(thr, "xi_dist_m2", "thresholds"), "xi_dist_m2");

    optional(root, "prediction", [&](const YAML::Node &n) {
        expect_map(n, "prediction");
        reject_unknown(n, "prediction", {"noise_std_rad"});
        optional(n, "noise_std_rad", [&](const YAML::Node &x) {
            s.prediction_noise_std_rad = real(x, "noise_std_rad");
            if (s.prediction_noise_std_rad < 0.0)
                fail(x, "'noise_std_rad' must be nonnegative");
        });
    });

    optional(root, "seed", [&](const YAML::Node &n) {
        const double x = real(n, "seed");
        if (x < 0.0 || x != std::floor(x))
            fail(n, "'seed' must be a nonnegative integer");
        s.seed = scalar<std::uint64_t>(n, "seed");
    });

    std::optional<PcrbModel> pcrb_default;
    optional(root, "pcrb_default", [&](const YAML::Node &n) { pcrb_default = parse_pcrb(n); });

    const YAML::Node vehicles = require(root, "vehicles", "scenario");
    if (!vehicles.IsSequence() || vehicles.size() == 0)
        fail(vehicles, "'vehicles' must be a nonempty list");
    for (const auto &v : vehicles)
        s.vehicles.push_back(parse_vehicle(v, pcrb_default));

    try
    {
        s.validate();
    }
    catch (const DomainError &e)
    {
        throw ConfigError(e.what());
    }
    return s;
}

RoadScenario load_scenario(const std::string &path)
{
    try
    {
        return parse_scenario(read_file(path));
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path + ": " + e.what(), e.line(), e.column());
    }
}

std::string_view to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::p_max:
        return "p_max";
    case SweepAxis::n_vehicles:
        return "n_vehicles";
    case SweepAxis::n_tx:
        return "n_tx";
    case SweepAxis::n_rx:
        return "n_rx";
    case SweepAxis::n_veh_antennas:
        return "n_veh_antennas";
    }
    return "unknown";
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw ConfigError("sweep needs at least one axis value");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ConfigError("sweep values must be sorted ascending");
    if (policies.empty())
        throw ConfigError("sweep needs at least one policy");
    if (repetitions < 1)
        throw ConfigError("sweep repetitions must be at least 1");
    for (double v : values)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("sweep values must be positive");
        if (axis != SweepAxis::p_max && v != std::floor(v))
            throw ConfigError("sweep values for axis '" + std::string(to_string(axis)) + "' must be integers");
    }
}

SweepSpec parse_sweep(const std::string &yaml_text)
{
    const YAML::Node root = load_yaml(yaml_text);
    if (!root.IsMap())
        throw ConfigError("sweep file must be a YAML mapping", 1, 1);
    reject_unknown(root, "sweep", {"axis", "values", "policies", "repetitions", "replicate_offset_m"});

    SweepSpec spec;
    spec.axis = parse_axis(require(root, "axis", "sweep"));

    const YAML::Node values = require(root, "values", "sweep");
    if (!values.IsSequence())
        fail(values, "'values' must be a list");
    for (const auto &v : values)
        spec.values.push_back(real(v, "values"));

    const YAML::Node policies = require(root, "policies", "sweep");
    if (!policies.IsSequence())
        fail(policies, "'policies' must be a list");
    for (const auto &p : policies)
    {
        try
        {
            spec.policies.push_back(parse_policy(scalar<std::string>(p, "policies")));
        }
        catch (const DomainError &e)
        {
            fail(p, e.what());
        }
    }
    optional(root, "repetitions", [&](const YAML::Node &n) { spec.repetitions = count(n, "repetitions"); });
    optional(root, "replicate_offset_m",
             [&](const YAML::Node &n) { spec.replicate_offset_m = real(n, "replicate_offset_m"); });

    try
    {
        spec.validate();
    }
    catch (const ConfigError &e)
    {
        fail(values, e.what());
    }
    return spec;
}

SweepSpec load_sweep(const std::string &path)
{
    try
    {
        return parse_sweep(read_file(path));
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path + ": " + e.what(), e.line(), e.column());
    }
}

} // namespace dfrc
