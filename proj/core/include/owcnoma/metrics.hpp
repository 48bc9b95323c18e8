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
#ifndef OWCNOMA_METRICS_HPP
#define OWCNOMA_METRICS_HPP

#include "owcnoma/baselines.hpp"

#include <cstdint>
#include <span>

namespace owcnoma
{

struct JainResult
{
    double value = 0.0;
    bool all_zero = false; // index undefined; reported as 0
};

// (sum r)^2 / (K sum r^2). Throws std::invalid_argument for empty input or negative rates.
JainResult jain_fairness(std::span<const double> rates);

// Bits per joule. Zero rate at zero power gives 0; positive rate at zero power throws.
double energy_efficiency(double rate_bps, double consumed_power_w);

struct MetricsRecord
{
    SchemeId scheme = SchemeId::dynamic_noma;
    std::uint64_t drop_index = 0;
    std::uint64_t drop_seed = 0;
    double sum_rate_bpshz = 0.0;
    double sum_rate_bps = 0.0;
    double jain = 0.0;
    bool jain_undefined = false;
    double energy_eff = 0.0; // bits/J over the optical power actually allocated
    double consumed_power = 0.0;
    int groups = 0;
    int groups_served = 0;
    int t_star = 0;
    bool infeasible = false;
    int rank_deficient_users = 0;
    std::uint64_t evaluations = 0;
};

MetricsRecord make_record(const SchemeOutcome &outcome, double bandwidth, std::uint64_t drop_index,
                          std::uint64_t drop_seed);

} // namespace owcnoma

#endif
