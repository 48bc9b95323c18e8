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
#include "owcnoma/baselines.hpp"

#include "owcnoma/errors.hpp"

#include <algorithm>
#include <numeric>

namespace owcnoma
{

namespace
{

const UserChannel *find_user(const SchemeInputs &in, int id)
{
    if (id == virtual_user_id)
        return nullptr;
    if (id < 0 || std::size_t(id) >= in.users.size() || in.users[std::size_t(id)].id != id)
        throw std::invalid_argument("Group refers to an unknown user id.");
    return &in.users[std::size_t(id)];
}

UserLink full_link(const UserChannel *u, const NoiseCovariance &rz)
{
    return u ? UserLink::from_channel(u->H, rz, u->sigma2) : UserLink::virtual_link();
}

UserLink scalar_link(const UserChannel *u)
{
    if (!u)
        return UserLink::virtual_link();
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = u->best_mode_gain();
    return UserLink::from_channel(h, noise_covariance(1, 1, 1.0), u->sigma2);
}

SchemeOutcome blank(SchemeId s, const SchemeInputs &in)
{
    SchemeOutcome out;
    out.scheme = s;
    out.user_rates.assign(in.users.size(), 0.0);
    out.groups = int(in.groups.pairs.size());
    return out;
}

void credit(SchemeOutcome &out, int id, double rate)
{
    if (id != virtual_user_id)
        out.user_rates[std::size_t(id)] = rate;
}

std::uint64_t total_evaluations(const std::vector<PairRateModel> &models)
{
    std::uint64_t n = 0;
    for (const auto &m : models)
        n += m.evaluations();
    return n;
}

// Dynamic allocation (levels, DP, selection) over the given pair models.
SchemeOutcome allocate_dynamic(SchemeId s, const SchemeInputs &in, const std::vector<PairRateModel> &models)
{
    SchemeOutcome out = blank(s, in);
    const SolutionGrid grid = solve_all(models, in.levels, in.qos, in.solver);
    const AllocationTables tables = dp_combine(in.order, in.levels, grid);
    out.evaluations = total_evaluations(models);
    try
    {
        const Selection sel = select_solution(tables, in.qos, in.levels.p_max);
        const Eigen::MatrixXd &tgt = tables.Tgt[std::size_t(sel.G_star - 1)];
        for (std::size_t g = 0; g < in.groups.pairs.size(); ++g)
        {
            credit(out, in.groups.pairs[g].weak_id, tgt(Eigen::Index(2 * g), sel.t_star - 1));
            credit(out, in.groups.pairs[g].strong_id, tgt(Eigen::Index(2 * g + 1), sel.t_star - 1));
        }
        out.consumed = sel.consumed;
        out.groups_served = sel.served;
        out.t_star = sel.t_star;
    }
    catch (const InfeasibleError &)
    {
        out.infeasible = true;
    }
    return out;
}

} // namespace

const char *to_string(SchemeId s)
{
    switch (s)
    {
    case SchemeId::dynamic_noma:
        return "dynamic_noma";
    case SchemeId::baseline1:
        return "baseline1";
    case SchemeId::baseline2:
        return "baseline2";
    case SchemeId::conventional_noma:
        return "conventional_noma";
    case SchemeId::plain_bia:
        return "plain_bia";
    }
    return "unknown";
}

SchemeId parse_scheme(std::string_view name)
{
    for (SchemeId s : all_schemes)
        if (name == to_string(s))
            return s;
    throw ConfigError("Unknown scheme '" + std::string(name) + "'.");
}

double UserChannel::best_mode_gain() const
{
    return H.size() == 0 ? 0.0 : H.rowwise().sum().maxCoeff();
}

double SchemeOutcome::sum_rate() const
{
    return std::accumulate(user_rates.begin(), user_rates.end(), 0.0);
}

std::vector<PairRateModel> bia_pair_models(const SchemeInputs &in)
{
    const int G = int(in.groups.pairs.size());
    const NoiseCovariance rz = noise_covariance(G, in.L, 1.0);
    const double prelog = bia::alignment_ratio(in.L, G).value();
    std::vector<PairRateModel> models;
    models.reserve(std::size_t(G));
    for (const auto &p : in.groups.pairs)
        models.emplace_back(full_link(find_user(in, p.weak_id), rz), full_link(find_user(in, p.strong_id), rz), prelog,
                            in.front_end);
    return models;
}

std::vector<PairRateModel> orthogonal_pair_models(const SchemeInputs &in)
{
    const int G = int(in.groups.pairs.size());
    std::vector<PairRateModel> models;
    models.reserve(std::size_t(G));
    for (const auto &p : in.groups.pairs)
        models.emplace_back(scalar_link(find_user(in, p.weak_id)), scalar_link(find_user(in, p.strong_id)),
                            1.0 / double(G), in.front_end);
    return models;
}

SchemeOutcome dynamic_noma(const SchemeInputs &in)
{
    return allocate_dynamic(SchemeId::dynamic_noma, in, bia_pair_models(in));
}

SchemeOutcome baseline2(const SchemeInputs &in)
{
    return allocate_dynamic(SchemeId::baseline2, in, orthogonal_pair_models(in));
}

SchemeOutcome baseline1(const SchemeInputs &in)
{
    SchemeOutcome out = blank(SchemeId::baseline1, in);
    const auto models = bia_pair_models(in);
    const double budget = in.levels.p_max / double(models.size());
    for (std::size_t g = 0; g < models.size(); ++g)
    {
        const GroupSolution sol = solve_group(int(g), models[g], budget, in.levels.p_max, in.qos, in.solver);
        if (!sol.feasible)
        {
            out.infeasible = true;
            continue;
        }
        credit(out, in.groups.pairs[g].weak_id, sol.rate_weak);
        credit(out, in.groups.pairs[g].strong_id, sol.rate_strong);
        out.consumed += sol.consumed();
        ++out.groups_served;
    }
    out.evaluations = total_evaluations(models);
    return out;
}

GroupAssignment pair_by_gain(const std::vector<UserChannel> &users)
{
    std::vector<const UserChannel *> sorted;
    for (const auto &u : users)
        sorted.push_back(&u);
    std::sort(sorted.begin(), sorted.end(), [](const UserChannel *a, const UserChannel *b)
              {
                  const double ga = a->aggregate_gain(), gb = b->aggregate_gain();
                  return ga != gb ? ga > gb : a->id < b->id;
              });
    GroupAssignment a;
    std::size_t i = 0, j = sorted.size();
    while (i + 1 < j)
    {
        --j;
        a.pairs.push_back({sorted[j]->id, sorted[i]->id, 0.0});
        ++i;
    }
    if (i + 1 == j)
        a.pairs.push_back({sorted[i]->id, virtual_user_id, 0.0});
    return a;
}

SchemeOutcome conventional_noma(const SchemeInputs &in)
{
    SchemeInputs paired = in;
    paired.groups = pair_by_gain(in.users);
    SchemeOutcome out = blank(SchemeId::conventional_noma, paired);
    const auto models = orthogonal_pair_models(paired);
    const double budget = in.levels.p_max / double(models.size());
    for (std::size_t g = 0; g < models.size(); ++g)
    {
        const auto &p = paired.groups.pairs[g];
        const bool solo = p.strong_id == virtual_user_id;
        const double p_w = solo ? budget : in.beta_w * budget;
        const double p_s = solo ? 0.0 : in.beta_s * budget;
        credit(out, p.weak_id, models[g].weak_rate(p_w, p_s));
        credit(out, p.strong_id, models[g].strong_rate(p_s));
        out.consumed += p_w + p_s;
        ++out.groups_served;
    }
    out.evaluations = total_evaluations(models);
    return out;
}

SchemeOutcome plain_bia(const SchemeInputs &in)
{
    SchemeOutcome out;
    out.scheme = SchemeId::plain_bia;
    out.user_rates.assign(in.users.size(), 0.0);
    const int K = int(in.users.size());
    if (K == 0)
        return out;
    const NoiseCovariance rz = noise_covariance(K, in.L, 1.0);
    const double prelog = bia::alignment_ratio(in.L, K).value();
    const double power = in.levels.p_max / double(K);
    for (const auto &u : in.users)
    {
        PairRateModel m(UserLink::from_channel(u.H, rz, u.sigma2), UserLink::virtual_link(), prelog, in.front_end);
        out.user_rates[std::size_t(u.id)] = m.weak_rate(power, 0.0);
        out.evaluations += m.evaluations();
    }
    out.consumed = in.levels.p_max;
    out.groups = K;
    out.groups_served = K;
    return out;
}

SchemeOutcome run_scheme(SchemeId s, const SchemeInputs &in)
{
    switch (s)
    {
    case SchemeId::dynamic_noma:
        return dynamic_noma(in);
    case SchemeId::baseline1:
        return baseline1(in);
    case SchemeId::baseline2:
        return baseline2(in);
    case SchemeId::conventional_noma:
        return conventional_noma(in);
    case SchemeId::plain_bia:
        return plain_bia(in);
    }
    throw std::invalid_argument("Unknown scheme id.");
}

} // namespace owcnoma
