// SPDX-License-Identifier: Apache-2.0
//
// owcnoma - laser-based optical wireless NOMA network simulator
// Copyright (C) 2026 The owcnoma Authors
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
#include "owcnoma/scenario.hpp"

#include "owcnoma/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace owcnoma
{

using nlohmann::json;

namespace
{

constexpr double deg = std::numbers::pi / 180.0;

// Reads keys from one JSON object and rejects anything it was not asked about.
class ObjectReader
{
public:
    ObjectReader(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError("'" + path_ + "' must be a JSON object.");
    }

    template <typename T>
    void get(const char *key, T &out)
    {
        seen_.insert(key);
        if (!j_.contains(key) || j_.at(key).is_null())
            return;
        try
        {
            out = j_.at(key).get<T>();
        }
        catch (const json::exception &e)
        {
            throw ConfigError("'" + path_ + "." + key + "': " + e.what());
        }
    }

    void get_deg(const char *key, double &rad)
    {
        double v = rad / deg;
        get(key, v);
        rad = v * deg;
    }

    template <typename T>
    void get_optional(const char *key, std::optional<T> &out)
    {
        seen_.insert(key);
        if (!j_.contains(key) || j_.at(key).is_null())
            return;
        T v{};
        get(key, v);
        out = v;
    }

    std::optional<ObjectReader> child(const char *key)
    {
        seen_.insert(key);
        if (!j_.contains(key))
            return std::nullopt;
        return ObjectReader(j_.at(key), path_.empty() ? key : path_ + "." + key);
    }

    const json *raw(const char *key)
    {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError("Unknown configuration key '" + (path_.empty() ? "" : path_ + ".") + it.key() + "'.");
    }

private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

double finite_or_null(const json &v)
{
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

} // namespace

void ScenarioConfig::validate() const
{
    room.validate();
    if (ap_rows < 1 || ap_cols < 1 || array_side < 1)
        throw ConfigError("AP grid rows, columns and array side must be at least 1.");
    if (num_users < 1)
        throw ConfigError("At least one user is required.");
    if (drops < 1)
        throw ConfigError("At least one drop is required.");
    if (threads < 0)
        throw ConfigError("Thread count cannot be negative.");
    if (placement == PlacementRule::fixed && int(fixed_positions.size()) != num_users)
        throw ConfigError("Fixed placement needs exactly one position per user.");
    if (!(user_height >= 0.0 && user_height < room.height))
        throw ConfigError("User height must lie inside the room and below the ceiling.");
    for (const auto &p : fixed_positions)
        if (!room.contains(p) || !(p.z < room.height))
            throw ConfigError("Fixed user position lies outside the room.");
    if (num_photodiodes < num_aps())
        throw ConfigError("The detector needs at least as many photodiodes as there are APs.");
    if (!(receiver_area > 0.0) || !(pd_area > 0.0) || !(pd_gain > 0.0))
        throw ConfigError("Detector areas and gain must be positive.");
    if (!(fov > 0.0 && fov <= std::numbers::pi / 2.0))
        throw ConfigError("Field of view must lie in (0, 90] degrees.");
    if (!(pd_elevation >= 0.0 && pd_elevation <= std::numbers::pi / 2.0))
        throw ConfigError("Photodiode elevation must lie in [0, 90] degrees.");
    beam.validate();
    eye_safety.validate();
    front_end.validate();
    noise.validate();
    if (snr_db && !std::isfinite(*snr_db))
        throw ConfigError("Target SNR must be finite.");
    if (!(beam_power_cap > 0.0))
        throw ConfigError("Per-beam power cap must be positive.");
    qos.validate(std::size_t(num_users));
    if (levels < 1)
        throw ConfigError("At least one power level is required.");
    if (!(solver.tol_dinkelbach > 0.0) || !(solver.step > 0.0) || !(solver.step_decay > 0.0 && solver.step_decay <= 1.0) ||
        solver.max_outer < 1 || solver.max_inner < 1 || !(solver.delta_rel > 0.0))
        throw ConfigError("Invalid solver settings.");
    if (!(blockage_probability >= 0.0 && blockage_probability <= 1.0))
        throw ConfigError("Blockage probability must lie in [0, 1].");
    if (classification == ClassificationKind::distance_threshold && !(distance_threshold > 0.0))
        throw ConfigError("The distance-threshold rule needs a positive threshold.");
    if (!(beta_w > beta_s && beta_s >= 0.0) || std::abs(beta_w + beta_s - 1.0) > 1e-12)
        throw ConfigError("Conventional NOMA factors must satisfy beta_w > beta_s >= 0 and beta_w + beta_s = 1.");
    if (!(e_rf >= 0.0 && e_rf <= 1.0))
        throw ConfigError("e_rf must lie in [0, 1].");
}

double ScenarioConfig::beam_power() const
{
    return std::min(beam_power_cap, max_safe_power(beam, eye_safety));
}

double ScenarioConfig::p_max() const
{
    return double(num_aps()) * double(array_side * array_side) * beam_power();
}

ScenarioConfig parse_config(const std::string &json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("Malformed configuration JSON: ") + e.what());
    }

    ScenarioConfig c;
    ObjectReader top(j, "");
    int version = 0;
    top.get("schema_version", version);
    if (version != config_schema_version)
        throw ConfigError("Unsupported or missing schema_version (expected " + std::to_string(config_schema_version) +
                          ").");
    top.get("seed", c.seed);
    top.get("drops", c.drops);
    top.get("threads", c.threads);
    top.get("blockage_probability", c.blockage_probability);
    top.get("e_rf", c.e_rf);

    if (auto r = top.child("room"))
    {
        r->get("width_m", c.room.width);
        r->get("depth_m", c.room.depth);
        r->get("height_m", c.room.height);
        r->finish();
    }
    if (auto r = top.child("access_points"))
    {
        r->get("rows", c.ap_rows);
        r->get("cols", c.ap_cols);
        r->get("array_side", c.array_side);
        r->finish();
    }
    if (auto r = top.child("users"))
    {
        r->get("count", c.num_users);
        std::string placement = "uniform";
        r->get("placement", placement);
        if (placement == "uniform")
            c.placement = PlacementRule::uniform;
        else if (placement == "fixed")
            c.placement = PlacementRule::fixed;
        else
            throw ConfigError("users.placement must be 'uniform' or 'fixed'.");
        r->get("height_m", c.user_height);
        if (const json *pos = r->raw("positions_m"))
        {
            if (!pos->is_array())
                throw ConfigError("users.positions_m must be an array of [x, y, z] triples.");
            for (const auto &p : *pos)
            {
                if (!p.is_array() || p.size() != 3)
                    throw ConfigError("users.positions_m entries must be [x, y, z] triples.");
                c.fixed_positions.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            }
        }
        r->finish();
    }
    if (auto r = top.child("detector"))
    {
        r->get("photodiodes", c.num_photodiodes);
        r->get_deg("elevation_deg", c.pd_elevation);
        r->get("receiver_area_m2", c.receiver_area);
        r->get("pd_area_m2", c.pd_area);
        r->get("pd_gain", c.pd_gain);
        r->get_deg("fov_deg", c.fov);
        r->finish();
    }
    if (auto r = top.child("beam"))
    {
        r->get("waist_m", c.beam.w0);
        r->get("wavelength_m", c.beam.wavelength);
        r->get("refractive_index", c.beam.refractive_index);
        r->get_deg("theta_fwhm_deg", c.beam.theta_fwhm);
        r->get("power_cap_w", c.beam_power_cap);
        r->finish();
    }
    if (auto r = top.child("eye_safety"))
    {
        auto &e = c.eye_safety;
        r->get("cornea_diameter_m", e.cornea_diameter);
        r->get("exposure_limit_w_m2", e.exposure_limit);
        r->get("hazard_distance_m", e.hazard_distance);
        r->get("current_low_a", e.current_low);
        r->get("current_high_a", e.current_high);
        r->get("dc_bias_a", e.dc_bias);
        r->get("modulation_amplitude_a", e.modulation_amplitude);
        r->get("power_low_w", e.power_low);
        r->get("power_high_w", e.power_high);
        r->finish();
    }
    if (auto r = top.child("front_end"))
    {
        r->get("responsivity_a_w", c.front_end.responsivity);
        r->get("conversion_factor_w_a", c.front_end.conversion_factor);
        r->get("bandwidth_hz", c.front_end.bandwidth);
        r->finish();
    }
    if (auto r = top.child("noise"))
    {
        std::string mode = "composite";
        r->get("mode", mode);
        if (mode == "composite")
            c.noise.mode = NoiseMode::composite;
        else if (mode == "fixed_sigma")
            c.noise.mode = NoiseMode::fixed_sigma;
        else
            throw ConfigError("noise.mode must be 'composite' or 'fixed_sigma'.");
        r->get("rin_db_hz", c.noise.rin_db_per_hz);
        r->get("thermal_psd_a2_hz", c.noise.thermal_psd);
        r->get("electron_charge_c", c.noise.electron_charge);
        r->get("fixed_sigma2_a2", c.noise.fixed_sigma2);
        r->get_optional("snr_db", c.snr_db);
        r->finish();
    }
    if (auto r = top.child("qos"))
    {
        r->get("r_min_bps_hz", c.qos.r_min);
        r->get("r_max_bps_hz", c.qos.r_max);
        r->get("strong_power_threshold_w", c.qos.p_s_threshold);
        r->get("network_r_min_bps_hz", c.qos.r_min_net);
        if (const json *v = r->raw("network_r_max_bps_hz"))
            c.qos.r_max_net = finite_or_null(*v);
        r->finish();
    }
    if (auto r = top.child("allocation"))
    {
        r->get("levels", c.levels);
        r->get("tol_dinkelbach", c.solver.tol_dinkelbach);
        r->get("step", c.solver.step);
        r->get("step_decay", c.solver.step_decay);
        r->get("max_outer", c.solver.max_outer);
        r->get("max_inner", c.solver.max_inner);
        r->get("delta_rel", c.solver.delta_rel);
        r->finish();
    }
    if (auto r = top.child("classification"))
    {
        std::string rule = "median_split";
        r->get("rule", rule);
        if (rule == "median_split")
            c.classification = ClassificationKind::median_split;
        else if (rule == "distance_threshold")
            c.classification = ClassificationKind::distance_threshold;
        else
            throw ConfigError("classification.rule must be 'median_split' or 'distance_threshold'.");
        r->get("distance_threshold_m", c.distance_threshold);
        r->finish();
    }
    if (auto r = top.child("conventional"))
    {
        r->get("beta_w", c.beta_w);
        r->get("beta_s", c.beta_s);
        r->finish();
    }
    top.finish();

    c.validate();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("Cannot open configuration file '" + path.string() + "'.");
    std::stringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_config(ss.str());
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string dump_config(const ScenarioConfig &c)
{
    json positions = json::array();
    for (const auto &p : c.fixed_positions)
        positions.push_back({p.x, p.y, p.z});
    json j = {
        {"schema_version", config_schema_version},
        {"seed", c.seed},
        {"drops", c.drops},
        {"threads", c.threads},
        {"room", {{"width_m", c.room.width}, {"depth_m", c.room.depth}, {"height_m", c.room.height}}},
        {"access_points", {{"rows", c.ap_rows}, {"cols", c.ap_cols}, {"array_side", c.array_side}}},
        {"users",
         {{"count", c.num_users},
          {"placement", c.placement == PlacementRule::uniform ? "uniform" : "fixed"},
          {"height_m", c.user_height},
          {"positions_m", positions}}},
        {"detector",
         {{"photodiodes", c.num_photodiodes},
          {"elevation_deg", c.pd_elevation / deg},
          {"receiver_area_m2", c.receiver_area},
          {"pd_area_m2", c.pd_area},
          {"pd_gain", c.pd_gain},
          {"fov_deg", c.fov / deg}}},
        {"beam",
         {{"waist_m", c.beam.w0},
          {"wavelength_m", c.beam.wavelength},
          {"refractive_index", c.beam.refractive_index},
          {"theta_fwhm_deg", c.beam.theta_fwhm / deg},
          {"power_cap_w", c.beam_power_cap}}},
        {"eye_safety",
         {{"cornea_diameter_m", c.eye_safety.cornea_diameter},
          {"exposure_limit_w_m2", c.eye_safety.exposure_limit},
          {"hazard_distance_m", c.eye_safety.hazard_distance},
          {"current_low_a", c.eye_safety.current_low},
          {"current_high_a", c.eye_safety.current_high},
          {"dc_bias_a", c.eye_safety.dc_bias},
          {"modulation_amplitude_a", c.eye_safety.modulation_amplitude},
          {"power_low_w", c.eye_safety.power_low},
          {"power_high_w", c.eye_safety.power_high}}},
        {"front_end",
         {{"responsivity_a_w", c.front_end.responsivity},
          {"conversion_factor_w_a", c.front_end.conversion_factor},
          {"bandwidth_hz", c.front_end.bandwidth}}},
        {"noise",
         {{"mode", c.noise.mode == NoiseMode::composite ? "composite" : "fixed_sigma"},
          {"rin_db_hz", c.noise.rin_db_per_hz},
          {"thermal_psd_a2_hz", c.noise.thermal_psd},
          {"electron_charge_c", c.noise.electron_charge},
          {"fixed_sigma2_a2", c.noise.fixed_sigma2},
          {"snr_db", c.snr_db ? json(*c.snr_db) : json(nullptr)}}},
        {"qos",
         {{"r_min_bps_hz", c.qos.r_min},
          {"r_max_bps_hz", c.qos.r_max},
          {"strong_power_threshold_w", c.qos.p_s_threshold},
          {"network_r_min_bps_hz", c.qos.r_min_net},
          {"network_r_max_bps_hz", std::isfinite(c.qos.r_max_net) ? json(c.qos.r_max_net) : json(nullptr)}}},
        {"allocation",
         {{"levels", c.levels},
          {"tol_dinkelbach", c.solver.tol_dinkelbach},
          {"step", c.solver.step},
          {"step_decay", c.solver.step_decay},
          {"max_outer", c.solver.max_outer},
          {"max_inner", c.solver.max_inner},
          {"delta_rel", c.solver.delta_rel}}},
        {"blockage_probability", c.blockage_probability},
        {"classification",
         {{"rule", c.classification == ClassificationKind::median_split ? "median_split" : "distance_threshold"},
          {"distance_threshold_m", c.distance_threshold}}},
        {"conventional", {{"beta_w", c.beta_w}, {"beta_s", c.beta_s}}},
        {"e_rf", c.e_rf},
    };
    return j.dump(2) + "\n";
}

} // namespace owcnoma
