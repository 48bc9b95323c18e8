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
#include "owcnoma/metrics.hpp"

#include <stdexcept>

namespace owcnoma
{

JainResult jain_fairness(std::span<const double> rates)
{
    if (rates.empty())
        throw std::invalid_argument("Jain's index needs at least one rate.");
    double s = 0.0, s2 = 0.0;
    for (double r : rates)
    {
        if (!(r >= 0.0))
            throw std::invalid_argument("Rates must be nonnegative.");
        s += r;
        s2 += r * r;
    }
    if (s2 == 0.0)
        return {0.0, true};
    return {s * s / (double(rates.size()) * s2), false};
}

double energy_efficiency(double rate_bps, double consumed_power_w)
{
    if (consumed_power_w < 0.0 || rate_bps < 0.0)
        throw std::invalid_argument("Rate and power must be nonnegative.");
    if (consumed_power_w == 0.0)
    {
        if (rate_bps > 0.0)
            throw std::invalid_argument("A positive rate cannot be delivered with zero power.");
        return 0.0;
    }
    return rate_bps / consumed_power_w;
}

MetricsRecord make_record(const SchemeOutcome &outcome, double bandwidth, std::uint64_t drop_index,
                          std::uint64_t drop_seed)
{
    MetricsRecord m;
    m.scheme = outcome.scheme;
    m.drop_index = drop_index;
    m.drop_seed = drop_seed;
    m.sum_rate_bpshz = outcome.sum_rate();
    m.sum_rate_bps = m.sum_rate_bpshz * bandwidth;
    if (!outcome.user_rates.empty())
    {
        const JainResult j = jain_fairness(outcome.user_rates);
        m.jain = j.value;
        m.jain_undefined = j.all_zero;
    }
    m.consumed_power = outcome.consumed;
    m.energy_eff = energy_efficiency(m.sum_rate_bps, outcome.consumed);
    m.groups = outcome.groups;
    m.groups_served = outcome.groups_served;
    m.t_star = outcome.t_star;
    m.infeasible = outcome.infeasible;
    m.evaluations = outcome.evaluations;
    return m;
}

} // namespace owcnoma
