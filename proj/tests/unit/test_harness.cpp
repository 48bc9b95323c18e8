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
#include "owcnoma/errors.hpp"
#include "owcnoma/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace owcnoma;

namespace
{
ScenarioConfig small_config()
{
    ScenarioConfig c;
    c.num_users = 8;
    c.drops = 4;
    c.levels = 6;
    c.threads = 1;
    return c;
}
} // namespace

TEST(Harness, DropIsDeterministic)
{
    const auto c = small_config();
    const auto a = build_drop(c, 2);
    const auto b = build_drop(c, 2);
    ASSERT_EQ(a.users.size(), b.users.size());
    for (std::size_t k = 0; k < a.users.size(); ++k)
    {
        EXPECT_EQ(a.users[k].position.x, b.users[k].position.x);
        EXPECT_EQ(a.inputs.users[k].sigma2, b.inputs.users[k].sigma2);
    }
    EXPECT_EQ(a.inputs.order, b.inputs.order);
    EXPECT_NE(build_drop(c, 3).seed, a.seed);
}

TEST(Harness, DropStructure)
{
    const auto c = small_config();
    const auto d = build_drop(c, 0);
    EXPECT_EQ(d.aps.size(), 16u);
    EXPECT_EQ(d.users.size(), 8u);
    EXPECT_EQ(d.inputs.groups.pairs.size(), 4u);
    EXPECT_EQ(d.inputs.order.size(), 4u);
    EXPECT_EQ(d.inputs.levels.T, 6);
    EXPECT_NEAR(d.inputs.levels.p_max, c.p_max(), 1e-15);
    for (const auto &u : d.inputs.users)
    {
        EXPECT_EQ(u.H.rows(), 16);
        EXPECT_GT(u.sigma2, 0.0);
    }
}

TEST(Harness, OddUserCountGetsVirtualPartner)
{
    auto c = small_config();
    c.num_users = 7;
    const auto d = build_drop(c, 0);
    int virt = 0;
    for (const auto &p : d.inputs.groups.pairs)
        virt += (p.weak_id == virtual_user_id) + (p.strong_id == virtual_user_id);
    EXPECT_EQ(virt, 1);
    EXPECT_NO_THROW(run_drop(c, SchemeId::dynamic_noma, 0));
}

TEST(Harness, SnrRescaleHitsTarget)
{
    auto c = small_config();
    c.snr_db = 85.0;
    const auto d = build_drop(c, 1);
    std::vector<double> s2;
    for (const auto &u : d.inputs.users)
        s2.push_back(u.sigma2);
    EXPECT_NEAR(median_snr_db(c, s2), 85.0, 1e-9);
}

TEST(Harness, ThreadCountDoesNotChangeResults)
{
    auto c = small_config();
    const std::vector<SchemeId> s(std::begin(all_schemes), std::end(all_schemes));
    const auto one = run_drops(c, s);
    c.threads = 3;
    const auto many = run_drops(c, s);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t d = 0; d < one.size(); ++d)
        for (std::size_t k = 0; k < s.size(); ++k)
            EXPECT_EQ(one[d][k].sum_rate_bpshz, many[d][k].sum_rate_bpshz);
}

TEST(Harness, AxisParsingAndApplication)
{
    EXPECT_EQ(parse_axis("users"), SweepAxis::num_users);
    EXPECT_EQ(parse_axis("beam_waist"), SweepAxis::beam_waist);
    EXPECT_THROW(parse_axis("colour"), ConfigError);
    const auto c = small_config();
    EXPECT_EQ(apply_axis(c, SweepAxis::num_users, 12).num_users, 12);
    EXPECT_DOUBLE_EQ(apply_axis(c, SweepAxis::beam_waist, 5).beam.w0, 5e-6);
    EXPECT_DOUBLE_EQ(apply_axis(c, SweepAxis::tx_power, 30).beam_power_cap, 0.03);
    EXPECT_DOUBLE_EQ(apply_axis(c, SweepAxis::blockage, 0.2).blockage_probability, 0.2);
    EXPECT_DOUBLE_EQ(*apply_axis(c, SweepAxis::snr, 90).snr_db, 90.0);
}

TEST(Harness, SweepCsvIsReproducible)
{
    auto c = small_config();
    c.drops = 2;
    const double values[] = {4, 6};
    const SchemeId schemes[] = {SchemeId::dynamic_noma, SchemeId::plain_bia};
    std::ostringstream a, b;
    write_sweep_csv(a, sweep(c, SweepAxis::num_users, values, schemes));
    c.threads = 2;
    write_sweep_csv(b, sweep(c, SweepAxis::num_users, values, schemes));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
              "axis,value,scheme,mean_rate_bps,stderr_rate_bps,mean_rate_bpshz,jain,ee_bits_per_joule,groups,t_star");
    EXPECT_THROW(sweep(c, SweepAxis::num_users, std::span<const double>{}, schemes), ConfigError);
}

TEST(Harness, RecordsCsv)
{
    const auto c = small_config();
    const auto recs = run_drop(c, std::vector<SchemeId>{SchemeId::baseline1}, 0);
    std::ostringstream os;
    write_records_csv(os, recs);
    const std::string s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
    EXPECT_EQ(s.rfind("drop,seed,scheme,", 0), 0u);
}

TEST(Harness, RecordInvariants)
{
    auto c = small_config();
    c.blockage_probability = 0.2;
    const std::vector<SchemeId> s(std::begin(all_schemes), std::end(all_schemes));
    for (const auto &drop : run_drops(c, s))
        for (const auto &r : drop)
        {
            EXPECT_LE(r.consumed_power, c.p_max() * (1 + 1e-12)) << to_string(r.scheme);
            if (!r.jain_undefined)
            {
                EXPECT_GE(r.jain, 1.0 / c.num_users - 1e-12);
                EXPECT_LE(r.jain, 1.0 + 1e-12);
            }
        }
}
