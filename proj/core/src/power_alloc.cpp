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
#include "owcnoma/power_alloc.hpp"

#include "owcnoma/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace owcnoma
{

namespace
{

// Largest x in [lo, hi] with f'(x) >= s for a concave f, i.e. the maximiser of f(x) - s x.
template <typename D1, typename D2>
double concave_argmax(D1 &&d1, D2 &&d2, double s, double lo, double hi, double guess)
{
    if (d1(lo) <= s)
        return lo;
    if (d1(hi) >= s)
        return hi;
    std::uintmax_t max_iter = 100;
    guess = std::clamp(guess, lo, hi);
    return boost::math::tools::newton_raphson_iterate(
        [&](double x) { return std::make_pair(d1(x) - s, d2(x)); }, guess, lo, hi, 40, max_iter);
}

bool rate_equal(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

const char *to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::feasible:
        return "feasible";
    case SolveStatus::infeasible_budget:
        return "infeasible_budget";
    case SolveStatus::infeasible_qos:
        return "infeasible_qos";
    case SolveStatus::not_converged:
        return "not_converged";
    }
    return "unknown";
}

PowerLevels discretize(double p_max, int T)
{
    if (T < 1)
        throw ConfigError("The number of power levels must be at least 1.");
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw ConfigError("The power budget must be positive and finite.");
    PowerLevels pl;
    pl.p_max = p_max;
    pl.T = T;
    pl.levels.resize(std::size_t(T));
    for (int t = 1; t <= T; ++t)
        pl.levels[std::size_t(t - 1)] = (t == T) ? p_max : double(t) * p_max / double(T);
    return pl;
}

std::optional<int> floor_to_level(double p, const PowerLevels &levels)
{
    if (p < 0.0)
        throw std::invalid_argument("floor_to_level needs a nonnegative power.");
    std::optional<int> best;
    for (int t = 1; t <= levels.T; ++t)
    {
        const double l = levels.level(t);
        if (l <= p * (1.0 + 1e-12))
            best = t;
        else
            break;
    }
    return best;
}

void QoSBounds::validate(std::size_t num_users) const
{
    if (!(r_min >= 0.0) || !(r_max >= r_min))
        throw ConfigError("Per-user rate bounds must satisfy 0 <= r_min <= r_max.");
    if (!(p_s_threshold > 0.0))
        throw ConfigError("The strong-user power threshold must be positive.");
    if (!(r_min_net >= 0.0) || !(r_max_net >= r_min_net))
        throw ConfigError("Network rate bounds must satisfy 0 <= R_min,n <= R_max,n.");
    if (r_min_net > double(num_users) * r_max)
        throw ConfigError("Minimum network rate exceeds what the per-user maximum rates allow.");
}

GroupSolution solve_group(int g, const PairRateModel &model, double budget, double p_max, const QoSBounds &qos,
                          const SolverConfig &cfg)
{
    if (!(budget > 0.0))
        throw std::invalid_argument("Group budget must be positive.");

    GroupSolution sol;
    sol.group = g;
    sol.budget = budget;
    const std::uint64_t eval0 = model.evaluations();
    auto finish = [&](SolveStatus st)
    {
        sol.status = st;
        sol.feasible = st == SolveStatus::feasible;
        sol.diagnostics.evaluations = model.evaluations() - eval0;
        return sol;
    };

    const double delta = cfg.delta_rel * p_max;
    const double p_st = qos.p_s_threshold;
    const bool weak_virtual = model.weak().virtual_user;
    const bool strong_virtual = model.strong().virtual_user;
    const double reserve = weak_virtual ? 0.0 : p_st + delta;

    // Strong user
    double p_s = 0.0, r_s = 0.0;
    if (!strong_virtual)
    {
        const double cap = std::min(p_st, budget - reserve);
        if (!(cap > 0.0))
            return finish(SolveStatus::infeasible_budget);
        p_s = std::min(cap, model.strong_power_for(qos.r_max, cap));
        r_s = model.strong_rate(p_s);
        if (r_s < qos.r_min * (1.0 - 1e-12))
            return finish(SolveStatus::infeasible_qos);
    }
    else if (budget < reserve)
        return finish(SolveStatus::infeasible_budget);
    sol.p_s = p_s;
    sol.rate_strong = r_s;

    if (weak_virtual)
    {
        if (!(r_s > 0.0))
            return finish(SolveStatus::infeasible_qos);
        sol.state.xi = p_s > 0.0 ? r_s / p_s : 0.0;
        sol.diagnostics.gradient_converged = true;
        return finish(SolveStatus::feasible);
    }

    // Weak user: feasible interval, demand and the rate-floor interval
    const double lo = p_st + delta;
    const double hi = budget - p_s;
    if (lo > hi)
        return finish(SolveStatus::infeasible_budget);
    const double r_hi = model.weak_rate(hi, p_s);
    const double target = std::min(qos.r_max, r_hi);
    if (target < qos.r_min * (1.0 - 1e-12))
        return finish(SolveStatus::infeasible_qos);
    // A group that can deliver nothing is not served
    if (!(target > 0.0) && !(r_s > 0.0))
        return finish(SolveStatus::infeasible_qos);
    // Even the smallest admissible weak power overshoots the rate cap
    if (model.weak_rate(lo, p_s) > qos.r_max * (1.0 + 1e-9))
        return finish(SolveStatus::infeasible_qos);
    sol.target_weak = target;

    const double p_floor = std::min(hi, model.weak_power_for(target, p_s, lo, hi));
    const double p_cap = r_hi <= qos.r_max ? hi : std::max(p_floor, model.weak_power_for(qos.r_max, p_s, lo, hi));

    // Normalised units: x = p_w / budget
    const double B = budget;
    const double x_lo = lo / B, x_hi = hi / B, x_floor = p_floor / B, x_cap = p_cap / B;
    auto r = [&](double x) { return model.weak_rate(B * x, p_s); };
    auto d1 = [&](double x) { return B * model.weak_rate_derivative(B * x, p_s); };
    auto d2 = [&](double x) { return B * B * model.weak_rate_second_derivative(B * x, p_s); };

    DinkelbachState &st = sol.state;
    SolverDiagnostics &dg = sol.diagnostics;
    st.xi = (r_hi + r_s) / (hi + p_s);
    double x_star = x_hi;
    double x_grad = x_hi;
    bool converged = false;

    for (int outer = 1; outer <= cfg.max_outer; ++outer)
    {
        dg.outer_iterations = outer;
        const double xi_n = st.xi * B;

        // Projected gradient on the multipliers, primal from the stationarity condition
        // (1 - lambda + nu) r'(x) = xi + alpha - mu.
        double step = cfg.step;
        for (int inner = 0; inner < cfg.max_inner; ++inner)
        {
            const double a = 1.0 - st.lambda_max + st.nu_min;
            const double c = xi_n + st.alpha - st.mu;
            double x_new;
            if (a <= 0.0)
                x_new = (a * r(1.0) - c > 0.0) ? 1.0 : 0.0;
            else if (c <= 0.0)
                x_new = 1.0;
            else
                x_new = concave_argmax(d1, d2, c / a, 0.0, 1.0, x_grad);

            const double rw = r(x_new);
            const double alpha = std::max(0.0, st.alpha - step * (x_hi - x_new));
            const double mu = std::max(0.0, st.mu - step * (x_new - x_lo));
            const double lambda = std::max(0.0, st.lambda_max - step * (qos.r_max - rw));
            const double nu = std::max(0.0, st.nu_min - step * (rw - target));
            step *= cfg.step_decay;

            const double change = std::max({std::abs(x_new - x_grad), std::abs(alpha - st.alpha),
                                            std::abs(mu - st.mu), std::abs(lambda - st.lambda_max),
                                            std::abs(nu - st.nu_min)});
            x_grad = x_new;
            st.alpha = alpha;
            st.mu = mu;
            st.lambda_max = lambda;
            st.nu_min = nu;
            ++st.tau;
            ++dg.inner_iterations;
            if (change <= cfg.inner_tol)
                break;
        }

        // Exact KKT point of the parametric subproblem on [x_floor, x_cap]
        x_star = concave_argmax(d1, d2, xi_n, x_floor, x_cap, x_grad);
        dg.gradient_converged = std::abs(x_grad - x_star) <= 1e-6;

        const double slope = d1(x_star);
        st.alpha = st.mu = st.lambda_max = st.nu_min = 0.0;
        if (slope > xi_n)
        {
            if (x_star >= x_hi)
                st.alpha = slope - xi_n;
            else
                st.lambda_max = 1.0 - xi_n / slope;
        }
        else if (slope < xi_n)
        {
            if (x_star > x_lo && slope > 0.0)
                st.nu_min = xi_n / slope - 1.0;
            else
                st.mu = xi_n - slope;
        }

        const double rw = r(x_star);
        const double rate = rw + r_s;
        const double power = B * x_star + p_s;
        dg.stationarity = std::abs((1.0 - st.lambda_max + st.nu_min) * slope - xi_n - st.alpha + st.mu);
        dg.max_slackness = std::max({st.alpha * std::abs(x_hi - x_star), st.mu * std::abs(x_star - x_lo),
                                     st.lambda_max * std::abs(qos.r_max - rw), st.nu_min * std::abs(rw - target)});
        dg.residual = std::abs(rate - st.xi * power);
        sol.rate_weak = rw;
        if (dg.residual <= cfg.tol_dinkelbach)
        {
            converged = true;
            break;
        }
        st.xi = rate / power;
    }

    sol.p_w = B * x_star;
    if (!converged)
        return finish(SolveStatus::not_converged);
    return finish(SolveStatus::feasible);
}

SolutionGrid solve_all(std::span<const PairRateModel> models, const PowerLevels &levels, const QoSBounds &qos,
                       const SolverConfig &cfg)
{
    SolutionGrid grid(models.size());
    for (std::size_t g = 0; g < models.size(); ++g)
    {
        grid[g].reserve(std::size_t(levels.T));
        for (int t = 1; t <= levels.T; ++t)
            grid[g].push_back(solve_group(int(g), models[g], levels.level(t), levels.p_max, qos, cfg));
    }
    return grid;
}

AllocationTables dp_combine(std::span<const int> order, const PowerLevels &levels, const SolutionGrid &solutions)
{
    const int G = int(order.size());
    const int T = levels.T;
    const int num_groups = int(solutions.size());
    {
        std::vector<char> seen(std::size_t(num_groups), 0);
        for (int g : order)
        {
            if (g < 0 || g >= num_groups || seen[std::size_t(g)])
                throw std::invalid_argument("Group order must list distinct valid group indices.");
            seen[std::size_t(g)] = 1;
            if (int(solutions[std::size_t(g)].size()) != T)
                throw std::invalid_argument("Every group needs one solution per power level.");
        }
    }

    AllocationTables tab;
    tab.G = G;
    tab.T = T;
    tab.order.assign(order.begin(), order.end());
    tab.R.setConstant(G, T, infeasible_rate);
    tab.served.setZero(G, T);
    tab.consumed.setZero(G, T);
    tab.choice.setZero(G, T);
    tab.remainder.setZero(G, T);

    // Row 0 (no groups) is identically zero; idx 0 is a zero budget
    auto prev_rate = [&](int row, int idx) { return (row == 0 || idx == 0) ? 0.0 : tab.R(row - 1, idx - 1); };
    auto prev_served = [&](int row, int idx) { return (row == 0 || idx == 0) ? 0 : tab.served(row - 1, idx - 1); };
    auto prev_consumed = [&](int row, int idx)
    { return (row == 0 || idx == 0) ? 0.0 : tab.consumed(row - 1, idx - 1); };

    for (int row = 1; row <= G; ++row)
    {
        const auto &sols = solutions[std::size_t(order[std::size_t(row - 1)])];
        for (int t = 1; t <= T; ++t)
        {
            double best = prev_rate(row - 1, t);
            int best_served = prev_served(row - 1, t);
            double best_consumed = prev_consumed(row - 1, t);
            int best_choice = 0, best_rem = t;

            for (int s = 1; s <= t; ++s)
            {
                const GroupSolution &sol = sols[std::size_t(s - 1)];
                if (!sol.feasible)
                    continue;
                const double left = std::max(0.0, levels.level(t) - sol.consumed());
                const int idx = floor_to_level(left, levels).value_or(0);
                const double val = sol.rate() + prev_rate(row - 1, idx);
                const int served = 1 + prev_served(row - 1, idx);
                const double consumed = sol.consumed() + prev_consumed(row - 1, idx);
                const bool better = val > best || (val == best && (served > best_served ||
                                                                   (served == best_served && consumed < best_consumed)));
                if (better)
                {
                    best = val;
                    best_served = served;
                    best_consumed = consumed;
                    best_choice = s;
                    best_rem = idx;
                }
            }
            tab.R(row - 1, t - 1) = best;
            tab.served(row - 1, t - 1) = best_served;
            tab.consumed(row - 1, t - 1) = best_consumed;
            tab.choice(row - 1, t - 1) = best_choice;
            tab.remainder(row - 1, t - 1) = best_rem;
        }
    }

    // Per-user targets and powers by walking each cell's choices back to row 0
    const int K = 2 * num_groups;
    tab.Tgt.assign(std::size_t(G), Eigen::MatrixXd::Zero(K, T));
    tab.Pw.assign(std::size_t(G), Eigen::MatrixXd::Zero(K, T));
    for (int row = 1; row <= G; ++row)
        for (int t = 1; t <= T; ++t)
        {
            int r = row, idx = t;
            while (r >= 1 && idx >= 1)
            {
                const int c = tab.choice(r - 1, idx - 1);
                const int next = tab.remainder(r - 1, idx - 1);
                if (c > 0)
                {
                    const int g = order[std::size_t(r - 1)];
                    const GroupSolution &sol = solutions[std::size_t(g)][std::size_t(c - 1)];
                    tab.Tgt[std::size_t(row - 1)](2 * g, t - 1) = sol.rate_weak;
                    tab.Tgt[std::size_t(row - 1)](2 * g + 1, t - 1) = sol.rate_strong;
                    tab.Pw[std::size_t(row - 1)](2 * g, t - 1) = sol.p_w;
                    tab.Pw[std::size_t(row - 1)](2 * g + 1, t - 1) = sol.p_s;
                }
                idx = next;
                --r;
            }
        }
    return tab;
}

Selection select_solution(const AllocationTables &tables, const QoSBounds &qos, double p_max)
{
    std::optional<Selection> best;
    for (int row = 1; row <= tables.G; ++row)
        for (int t = 1; t <= tables.T; ++t)
        {
            const double rate = tables.R(row - 1, t - 1);
            if (!std::isfinite(rate))
                continue;
            const double power = tables.Pw[std::size_t(row - 1)].col(t - 1).sum();
            if (power > p_max * (1.0 + 1e-12))
                continue;
            if (rate < qos.r_min_net * (1.0 - 1e-12) || rate > qos.r_max_net * (1.0 + 1e-12))
                continue;

            const Selection cand{row, t, rate, tables.served(row - 1, t - 1), power};
            bool better = false;
            if (!best)
                better = true;
            else if (!rate_equal(cand.rate, best->rate))
                better = cand.rate > best->rate;
            else if (cand.served != best->served)
                better = cand.served > best->served;
            else if (cand.t_star != best->t_star)
                better = cand.t_star < best->t_star;
            else
                better = cand.G_star < best->G_star;
            if (better)
                best = cand;
        }
    if (!best)
        throw InfeasibleError("No feasible network solution: every allocation table cell is masked.");
    return *best;
}

void write_rate_table_csv(std::ostream &os, const AllocationTables &tables)
{
    os << "groups";
    for (int t = 1; t <= tables.T; ++t)
        os << ",t" << t;
    os << '\n';
    for (int row = 1; row <= tables.G; ++row)
    {
        os << row;
        for (int t = 1; t <= tables.T; ++t)
        {
            os << ',';
            const double v = tables.R(row - 1, t - 1);
            if (std::isfinite(v))
                os << v;
        }
        os << '\n';
    }
}

void write_user_table_csv(std::ostream &os, const AllocationTables &tables, const std::vector<Eigen::MatrixXd> &table,
                          const std::string &value_name)
{
    os << "groups,user_row";
    for (int t = 1; t <= tables.T; ++t)
        os << ',' << value_name << "_t" << t;
    os << '\n';
    for (int row = 1; row <= tables.G; ++row)
    {
        const Eigen::MatrixXd &m = table[std::size_t(row - 1)];
        for (Eigen::Index k = 0; k < m.rows(); ++k)
        {
            os << row << ',' << k;
            for (int t = 1; t <= tables.T; ++t)
            {
                os << ',';
                if (std::isfinite(tables.R(row - 1, t - 1)))
                    os << m(k, t - 1);
            }
            os << '\n';
        }
    }
}

} // namespace owcnoma
