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
#ifndef OWCNOMA_SCENARIO_HPP
#define OWCNOMA_SCENARIO_HPP

#include "owcnoma/channel.hpp"
#include "owcnoma/geometry.hpp"
#include "owcnoma/power_alloc.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace owcnoma
{

inline constexpr int config_schema_version = 1;

enum class PlacementRule
{
    uniform,
    fixed
};

enum class ClassificationKind
{
    median_split,
    distance_threshold
};

// One experiment. Every field maps to a JSON key of the same name (see README); all values
// are SI except angles, which are given in degrees in the file.
struct ScenarioConfig
{
    std::uint64_t seed = 1;
    int drops = 50;
    int threads = 0; // 0: hardware concurrency

    Room room;
    int ap_rows = 4;
    int ap_cols = 4;
    int array_side = 1;

    int num_users = 20;
    PlacementRule placement = PlacementRule::uniform;
    double user_height = 0.0;
    std::vector<Vec3> fixed_positions;

    int num_photodiodes = 16;
    double pd_elevation = 0.7853981633974483; // rad
    double receiver_area = 2.4e-4;
    double pd_area = 1.5e-5;
    double pd_gain = 1.0;
    double fov = 1.0471975511965976;

    BeamParams beam;
    EyeSafetyParams eye_safety;
    OpticalFrontEnd front_end;
    NoiseModel noise;
    std::optional<double> snr_db; // rescales every noise variance to hit this median SNR

    double beam_power_cap = 0.06; // per-VCSEL optical power [W], further limited by eye safety

    QoSBounds qos{0.0, 0.4, 0.0192, 0.0, std::numeric_limits<double>::infinity()};
    int levels = 20;
    SolverConfig solver;

    double blockage_probability = 0.0;
    ClassificationKind classification = ClassificationKind::median_split;
    double distance_threshold = 0.0;
    double beta_w = 0.8;
    double beta_s = 0.2;
    double e_rf = 0.1; // RF fraction for the grouping exchange; recorded, not modelled

    void validate() const;

    int num_aps() const { return ap_rows * ap_cols; }
    // Per-VCSEL transmit power: min(cap, eye-safe power of the beam).
    double beam_power() const;
    // P_max = sum over APs of L_v^2 times the per-VCSEL power.
    double p_max() const;
};

ScenarioConfig parse_config(const std::string &json_text);
ScenarioConfig load_config(const std::filesystem::path &path);
std::string dump_config(const ScenarioConfig &cfg);

} // namespace owcnoma

#endif
