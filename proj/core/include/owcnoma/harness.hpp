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
#ifndef OWCNOMA_HARNESS_HPP
#define OWCNOMA_HARNESS_HPP

#include "owcnoma/baselines.hpp"
#include "owcnoma/metrics.hpp"
#include "owcnoma/scenario.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace owcnoma
{

// Everything that is fixed for one Monte Carlo drop before a scheme runs.
struct Drop
{
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    std::vector<AccessPoint> aps;
    std::vector<UserTerminal> users;
    BlockageMask blockage;
    std::vector<ChannelMatrix> channels;
    Classification classes;
    bool classification_fallback = false; // distance rule left a class empty
    WeightMatrix weights;
    SchemeInputs inputs;
};

// Deterministic in (cfg, index): the drop's generator is seeded with mix_seed(cfg.seed, index).
Drop build_drop(const ScenarioConfig &cfg, std::uint64_t index);

// Median over users of c rho^2 f^2 P_max / (K sigma_k^2), in dB.
double median_snr_db(const ScenarioConfig &cfg, std::span<const double> sigma2);

std::vector<MetricsRecord> run_drop(const ScenarioConfig &cfg, std::span<const SchemeId> schemes, std::uint64_t index);
MetricsRecord run_drop(const ScenarioConfig &cfg, SchemeId scheme, std::uint64_t index);

// records[d][s] for drops 0..cfg.drops-1 and the given schemes. Drops are spread over
// cfg.threads workers; the output does not depend on the thread count.
std::vector<std::vector<MetricsRecord>> run_drops(const ScenarioConfig &cfg, std::span<const SchemeId> schemes);

enum class SweepAxis
{
    num_users,
    blockage,
    snr,
    beam_waist,
    tx_power
};

const char *to_string(SweepAxis a);
SweepAxis parse_axis(std::string_view name);

// Axis units: num_users count, blockage probability, snr dB, beam_waist micrometres,
// tx_power milliwatts per beam.
ScenarioConfig apply_axis(const ScenarioConfig &cfg, SweepAxis axis, double value);

struct SweepPoint
{
    double value = 0.0;
    SchemeId scheme = SchemeId::dynamic_noma;
    std::vector<MetricsRecord> drops;

    double mean_rate_bps() const;
    double stderr_rate_bps() const;
    double mean_rate_bpshz() const;
    double mean_jain() const;
    double mean_ee() const;
    double mean_groups_served() const;
    double mean_t_star() const;
};

struct SweepResult
{
    SweepAxis axis = SweepAxis::num_users;
    std::vector<double> values;
    std::vector<SchemeId> schemes;
    std::vector<SweepPoint> points; // value-major, scheme-minor

    const SweepPoint &at(std::size_t value_index, SchemeId scheme) const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

SweepResult sweep(const ScenarioConfig &cfg, SweepAxis axis, std::span<const double> values,
                  std::span<const SchemeId> schemes, const ProgressFn &progress = {});

// axis,value,scheme,mean_rate_bps,stderr_rate_bps,mean_rate_bpshz,jain,ee_bits_per_joule,groups,t_star
void write_sweep_csv(std::ostream &os, const SweepResult &result);

// One row per (drop, scheme).
void write_records_csv(std::ostream &os, std::span<const MetricsRecord> records);

} // namespace owcnoma

#endif
