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
#include "owcnoma/oracles.hpp"
#include "owcnoma/power_alloc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace owcnoma;

namespace
{
GroupSolution fake(double rate_w, double rate_s, double p_w, double p_s, bool feasible = true)
{
    GroupSolution s;
    s.rate_weak = rate_w;
    s.rate_strong = rate_s;
    s.p_w = p_w;
    s.p_s = p_s;
    s.feasible = feasible;
    s.status = feasible ? SolveStatus::feasible : SolveStatus::infeasible_budget;
    return s;
}

// Group-rate tables with solutions that consume their whole level.
SolutionGrid exact_grid(const PowerLevels &lv, const std::vector<std::vector<double>> &rates)
{
    SolutionGrid grid;
    for (const auto &row : rates)
    {
        std::vector<GroupSolution> g;
        for (int t = 1; t <= lv.T; ++t)
        {
            const double r = row[std::size_t(t - 1)];
            g.push_back(fake(r / 2, r / 2, lv.level(t) * 0.6, lv.level(t) * 0.4, r >= 0.0));
        }
        grid.push_back(g);
    }
    return grid;
}
} // namespace

TEST(PowerAlloc, Discretize)
{
    const auto lv = discretize(80.0, 4);
    EXPECT_EQ(lv.levels, (std::vector<double>{20, 40, 60, 80}));
    const auto one = discretize(1.0, 1);
    EXPECT_EQ(one.levels, std::vector<double>{1.0});
    const auto odd = discretize(0.96, 7);
    EXPECT_EQ(odd.level(7), 0.96);
    for (int t = 1; t <= 7; ++t)
        EXPECT_NEAR(odd.level(t) / odd.level(1), t, 1e-12);
    EXPECT_THROW(discretize(1.0, 0), ConfigError);
    EXPECT_THROW(discretize(0.0, 3), ConfigError);
}

TEST(PowerAlloc, FloorToLevel)
{
    const auto lv = discretize(80.0, 4);
    EXPECT_EQ(floor_to_level(45.0, lv), 2);
    EXPECT_EQ(floor_to_level(20.0, lv), 1);
    EXPECT_EQ(floor_to_level(19.9, lv), std::nullopt);
    EXPECT_EQ(floor_to_level(1000.0, lv), 4);
    EXPECT_EQ(floor_to_level(40.0 * (1 - 1e-14), lv), 2);
    EXPECT_THROW(floor_to_level(-1.0, lv), std::invalid_argument);
}

TEST(PowerAlloc, QosValidation)
{
    QoSBounds q{0.5, 0.2, 1.0, 0.0, 1.0};
    EXPECT_THROW(q.validate(2), ConfigError);
    QoSBounds ok{0.0, 1.0, 0.1, 0.0, 10.0};
    EXPECT_NO_THROW(ok.validate(4));
    QoSBounds net{0.0, 1.0, 0.1, 5.0, 10.0};
    EXPECT_THROW(net.validate(4), ConfigError);
}

TEST(PowerAlloc, InfeasibleWhenNoRoomAboveThreshold)
{
    Rng rng(1);
    auto pb = oracle::random_group_problem(rng);
    const auto m = oracle::pair_model(pb);
    pb.qos.p_s_threshold = pb.budget;
    const auto s = solve_group(0, m, pb.budget, pb.p_max, pb.qos);
    EXPECT_FALSE(s.feasible);
    EXPECT_EQ(s.status, SolveStatus::infeasible_budget);
    EXPECT_EQ(s.rate(), infeasible_rate);
    EXPECT_EQ(s.consumed(), 0.0);
    EXPECT_THROW(solve_group(0, m, 0.0, pb.p_max, pb.qos), std::invalid_argument);
}

TEST(PowerAlloc, InfeasibleWhenMinimumRateUnreachable)
{
    Rng rng(2);
    auto pb = oracle::random_group_problem(rng);
    pb.qos.r_min = 50.0;
    pb.qos.r_max = 60.0;
    const auto s = solve_group(0, oracle::pair_model(pb), pb.budget, pb.p_max, pb.qos);
    EXPECT_FALSE(s.feasible);
    EXPECT_EQ(s.status, SolveStatus::infeasible_qos);
}

TEST(PowerAlloc, BudgetBindsWithLooseBounds)
{
    Rng rng(3);
    for (int i = 0; i < 10; ++i)
    {
        auto pb = oracle::random_group_problem(rng);
        pb.qos.r_max = 1e6;
        const auto s = solve_group(0, oracle::pair_model(pb), pb.budget, pb.p_max, pb.qos);
        ASSERT_TRUE(s.feasible);
        EXPECT_NEAR(s.consumed(), pb.budget, 1e-9 * pb.budget);
        EXPECT_NEAR(s.p_s, pb.qos.p_s_threshold, 1e-12 * pb.budget);
        EXPECT_GT(s.p_w, pb.qos.p_s_threshold);
    }
}

TEST(PowerAlloc, MatchesGridOracle)
{
    Rng rng(4);
    for (int i = 0; i < 50; ++i)
    {
        const auto pb = oracle::random_group_problem(rng);
        const auto s = solve_group(0, oracle::pair_model(pb), pb.budget, pb.p_max, pb.qos);
        const auto ref = oracle::grid_search_group(pb);
        ASSERT_EQ(s.feasible, ref.feasible) << "instance " << i;
        if (!ref.feasible)
            continue;
        EXPECT_NEAR(s.rate(), ref.rate(), 1e-3 * ref.rate()) << "instance " << i;
        EXPECT_NEAR(s.p_w, ref.p_w, 1e-3 * ref.p_w) << "instance " << i;
        EXPECT_NEAR(s.p_s, ref.p_s, 1e-6 * pb.budget) << "instance " << i;
        EXPECT_LE(s.diagnostics.residual, 1e-6);
        EXPECT_GE(s.state.alpha, 0.0);
        EXPECT_GE(s.state.mu, 0.0);
        EXPECT_GE(s.state.lambda_max, 0.0);
        EXPECT_GE(s.state.nu_min, 0.0);
        EXPECT_LE(s.diagnostics.max_slackness, 1e-4);
    }
}

TEST(PowerAlloc, RateCapBinds)
{
    Rng rng(5);
    int binding = 0;
    for (int i = 0; i < 40; ++i)
    {
        auto pb = oracle::random_group_problem(rng);
        const auto m = oracle::pair_model(pb);
        // Look for a cap that the weak user can hit strictly inside its power interval once
        // the strong user has been throttled to that same cap.
        const double p_st = pb.qos.p_s_threshold;
        const double full = m.weak_rate(pb.budget - p_st, p_st);
        bool found = false;
        for (double f = 0.95; f > 0.2 && !found; f -= 0.05)
        {
            const double cap = f * full;
            const double p_s = std::min(p_st, m.strong_power_for(cap, p_st));
            found = m.weak_rate(1.01 * p_st, p_s) < cap && cap < m.weak_rate(pb.budget - p_s, p_s);
            if (found)
                pb.qos.r_max = cap;
        }
        if (!found)
            continue;
        const auto s = solve_group(0, m, pb.budget, pb.p_max, pb.qos);
        ASSERT_TRUE(s.feasible);
        ++binding;
        EXPECT_NEAR(s.rate_weak, pb.qos.r_max, 1e-9 * pb.qos.r_max);
        EXPECT_LT(s.consumed(), pb.budget);
        EXPECT_GE(s.state.lambda_max, 0.0);
        EXPECT_GE(s.state.nu_min, 0.0);
        EXPECT_LE(s.diagnostics.residual, 1e-6);
    }
    EXPECT_GT(binding, 20);
}

TEST(PowerAlloc, VirtualPartners)
{
    Rng rng(6);
    const auto pb = oracle::random_group_problem(rng);
    const NoiseCovariance rz = noise_covariance(pb.G, int(pb.H_weak.rows()), 1.0);
    const PairRateModel solo_strong(UserLink::virtual_link(), UserLink::from_channel(pb.H_strong, rz, 1.0), pb.prelog,
                                    pb.front_end);
    const auto s = solve_group(0, solo_strong, pb.budget, pb.p_max, pb.qos);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.p_w, 0.0);
    EXPECT_GT(s.rate_strong, 0.0);

    QoSBounds loose = pb.qos;
    loose.r_max = 1e6;
    const PairRateModel solo_weak(UserLink::from_channel(pb.H_weak, rz, 1.0), UserLink::virtual_link(), pb.prelog,
                                  pb.front_end);
    const auto w = solve_group(0, solo_weak, pb.budget, pb.p_max, loose);
    ASSERT_TRUE(w.feasible);
    EXPECT_EQ(w.p_s, 0.0);
    EXPECT_GT(w.rate_weak, 0.0);
}

TEST(PowerAlloc, SilentGroupIsNotServed)
{
    const NoiseCovariance rz = noise_covariance(1, 2, 1.0);
    const UserLink dark = UserLink::from_channel(Eigen::MatrixXd::Zero(2, 2), rz, 1.0);
    const PairRateModel m(dark, dark, 0.5, OpticalFrontEnd{});
    QoSBounds q{0.0, 1.0, 0.2, 0.0, std::numeric_limits<double>::infinity()};
    const auto s = solve_group(0, m, 1.0, 1.0, q);
    EXPECT_FALSE(s.feasible);
    EXPECT_EQ(s.status, SolveStatus::infeasible_qos);
}

TEST(PowerAlloc, DpSingleGroupEqualsSolutions)
{
    const auto lv = discretize(4.0, 4);
    const auto grid = exact_grid(lv, {{1.0, 2.0, 2.5, 2.7}});
    const int order[] = {0};
    const auto tab = dp_combine(order, lv, grid);
    for (int t = 1; t <= 4; ++t)
        EXPECT_DOUBLE_EQ(tab.R(0, t - 1), grid[0][std::size_t(t - 1)].rate());
}

TEST(PowerAlloc, DpExactBudgetComposition)
{
    const auto lv = discretize(2.0, 2);
    const auto grid = exact_grid(lv, {{1.0, 1.1}, {0.7, 0.8}});
    const int order[] = {0, 1};
    const auto tab = dp_combine(order, lv, grid);
    EXPECT_DOUBLE_EQ(tab.R(1, 1), 1.7);
    EXPECT_EQ(tab.served(1, 1), 2);
    EXPECT_DOUBLE_EQ(tab.R(1, 0), 1.0);
    EXPECT_EQ(tab.served(1, 0), 1);
}

TEST(PowerAlloc, DpMatchesExhaustiveOracle)
{
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial)
    {
        const int G = 1 + int(uniform_index(rng, 3));
        const int T = 1 + int(uniform_index(rng, 8));
        const auto lv = discretize(uniform(rng, 1.0, 10.0), T);
        SolutionGrid grid(static_cast<std::size_t>(G));
        for (int g = 0; g < G; ++g)
            for (int t = 1; t <= T; ++t)
            {
                const bool ok = uniform01(rng) > 0.2;
                const double spend = lv.level(t) * uniform(rng, 0.3, 1.0);
                grid[std::size_t(g)].push_back(fake(uniform(rng, 0, 2), uniform(rng, 0, 2), 0.7 * spend, 0.3 * spend, ok));
            }
        std::vector<int> order(static_cast<std::size_t>(G));
        for (int g = 0; g < G; ++g)
            order[std::size_t(g)] = g;
        shuffle(order, rng);
        const auto tab = dp_combine(order, lv, grid);
        const auto ref = oracle::exhaustive_allocation(order, lv, grid);
        for (int r = 0; r < G; ++r)
            for (int t = 0; t < T; ++t)
            {
                const double want = std::max(0.0, ref(r, t)); // serving nobody is always possible
                EXPECT_NEAR(tab.R(r, t), want, 1e-6 * std::max(1.0, want));
            }
    }
}

TEST(PowerAlloc, DpMonotoneInLevel)
{
    Rng rng(8);
    const auto lv = discretize(5.0, 8);
    SolutionGrid grid(3);
    for (int g = 0; g < 3; ++g)
        for (int t = 1; t <= 8; ++t)
            grid[std::size_t(g)].push_back(fake(0.1 * t + uniform01(rng), 0.2, lv.level(t) * 0.5, lv.level(t) * 0.3));
    const int order[] = {2, 0, 1};
    const auto tab = dp_combine(order, lv, grid);
    for (int r = 0; r < 3; ++r)
        for (int t = 1; t < 8; ++t)
            EXPECT_GE(tab.R(r, t), tab.R(r, t - 1));
}

TEST(PowerAlloc, DpUserTablesRespectBudgets)
{
    Rng rng(9);
    const auto lv = discretize(3.0, 6);
    SolutionGrid grid(3);
    for (int g = 0; g < 3; ++g)
        for (int t = 1; t <= 6; ++t)
            grid[std::size_t(g)].push_back(fake(uniform01(rng), uniform01(rng), lv.level(t) * 0.6, lv.level(t) * 0.35));
    const int order[] = {0, 1, 2};
    const auto tab = dp_combine(order, lv, grid);
    for (int r = 0; r < 3; ++r)
        for (int t = 1; t <= 6; ++t)
        {
            EXPECT_LE(tab.Pw[std::size_t(r)].col(t - 1).sum(), lv.level(t) * (1 + 1e-12));
            EXPECT_NEAR(tab.Tgt[std::size_t(r)].col(t - 1).sum(), tab.R(r, t - 1), 1e-12);
        }
    EXPECT_THROW(dp_combine(std::vector<int>{0, 0, 1}, lv, grid), std::invalid_argument);
}

TEST(PowerAlloc, SelectionPrefersMoreGroupsThenLowerLevel)
{
    AllocationTables tab;
    tab.G = 3;
    tab.T = 4;
    tab.R = Eigen::MatrixXd::Constant(3, 4, 1.0);
    tab.served.setZero(3, 4);
    tab.consumed.setZero(3, 4);
    tab.Tgt.assign(3, Eigen::MatrixXd::Zero(6, 4));
    tab.Pw.assign(3, Eigen::MatrixXd::Zero(6, 4));
    for (int r = 0; r < 3; ++r)
        for (int t = 0; t < 4; ++t)
        {
            tab.served(r, t) = std::min(r + 1, 2);
            tab.Pw[std::size_t(r)](0, t) = 0.1 * (t + 1);
        }
    const QoSBounds q{0.0, 1.0, 0.1, 0.0, std::numeric_limits<double>::infinity()};
    const auto sel = select_solution(tab, q, 10.0);
    EXPECT_EQ(sel.served, 2);
    EXPECT_EQ(sel.t_star, 1);
    EXPECT_EQ(sel.G_star, 2);

    // A strictly higher rate wins regardless of groups or level
    tab.R(0, 3) = 1.5;
    const auto hi = select_solution(tab, q, 10.0);
    EXPECT_EQ(hi.G_star, 1);
    EXPECT_EQ(hi.t_star, 4);
}

TEST(PowerAlloc, SelectionMasks)
{
    AllocationTables tab;
    tab.G = 1;
    tab.T = 2;
    tab.R.resize(1, 2);
    tab.R << 1.0, 2.0;
    tab.served.setOnes(1, 2);
    tab.consumed.setZero(1, 2);
    tab.Tgt.assign(1, Eigen::MatrixXd::Zero(2, 2));
    tab.Pw.assign(1, Eigen::MatrixXd::Zero(2, 2));
    tab.Pw[0](0, 0) = 1.0;
    tab.Pw[0](0, 1) = 5.0;
    const QoSBounds q{0.0, 1.0, 0.1, 0.0, std::numeric_limits<double>::infinity()};
    EXPECT_EQ(select_solution(tab, q, 2.0).t_star, 1); // second cell exceeds P_max
    QoSBounds net = q;
    net.r_min_net = 1.5;
    EXPECT_THROW(select_solution(tab, net, 2.0), InfeasibleError);
    tab.R.setConstant(infeasible_rate);
    EXPECT_THROW(select_solution(tab, q, 10.0), InfeasibleError);
}

TEST(PowerAlloc, TableCsvLeavesInfeasibleCellsEmpty)
{
    const auto lv = discretize(2.0, 2);
    SolutionGrid grid{{fake(0, 0, 0, 0, false), fake(0.5, 0.25, 1.0, 0.5)}};
    const int order[] = {0};
    const auto tab = dp_combine(order, lv, grid);
    std::ostringstream os;
    write_rate_table_csv(os, tab);
    EXPECT_EQ(os.str(), "groups,t1,t2\n1,0,0.75\n");
}
