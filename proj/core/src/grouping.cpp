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
#include "owcnoma/grouping.hpp"

#include "owcnoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

namespace owcnoma
{

namespace
{

// Minimum-cost assignment on a square cost matrix via shortest augmenting paths with
// potentials. Returns row_of_col and the optimal cost.
struct Assignment
{
    std::vector<int> row_of_col;
    double cost = 0.0;
};

Assignment hungarian_min(const Eigen::MatrixXd &cost)
{
    const int n = int(cost.rows());
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; index 0 is the virtual root of each augmenting tree
    std::vector<double> u(std::size_t(n) + 1, 0.0), v(std::size_t(n) + 1, 0.0);
    std::vector<int> p(std::size_t(n) + 1, 0), way(std::size_t(n) + 1, 0);

    for (int i = 1; i <= n; ++i)
    {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(std::size_t(n) + 1, inf);
        std::vector<char> used(std::size_t(n) + 1, 0);
        do
        {
            used[std::size_t(j0)] = 1;
            const int i0 = p[std::size_t(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j)
            {
                if (used[std::size_t(j)])
                    continue;
                const double cur = cost(i0 - 1, j - 1) - u[std::size_t(i0)] - v[std::size_t(j)];
                if (cur < minv[std::size_t(j)])
                {
                    minv[std::size_t(j)] = cur;
                    way[std::size_t(j)] = j0;
                }
                if (minv[std::size_t(j)] < delta)
                {
                    delta = minv[std::size_t(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j)
            {
                if (used[std::size_t(j)])
                {
                    u[std::size_t(p[std::size_t(j)])] += delta;
                    v[std::size_t(j)] -= delta;
                }
                else
                    minv[std::size_t(j)] -= delta;
            }
            j0 = j1;
        } while (p[std::size_t(j0)] != 0);
        do
        {
            const int j1 = way[std::size_t(j0)];
            p[std::size_t(j0)] = p[std::size_t(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment a;
    a.row_of_col.assign(std::size_t(n), -1);
    for (int j = 1; j <= n; ++j)
        a.row_of_col[std::size_t(j - 1)] = p[std::size_t(j)] - 1;
    for (int j = 0; j < n; ++j)
        a.cost += cost(a.row_of_col[std::size_t(j)], j);
    return a;
}

// Best total weight of the submatrix obtained by removing the given rows and columns.
double best_remaining(const Eigen::MatrixXd &w, const std::vector<char> &row_used, const std::vector<char> &col_used)
{
    std::vector<Eigen::Index> rows, cols;
    for (Eigen::Index r = 0; r < w.rows(); ++r)
        if (!row_used[std::size_t(r)])
            rows.push_back(r);
    for (Eigen::Index c = 0; c < w.cols(); ++c)
        if (!col_used[std::size_t(c)])
            cols.push_back(c);
    if (rows.empty())
        return 0.0;
    Eigen::MatrixXd cost(Eigen::Index(rows.size()), Eigen::Index(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            cost(Eigen::Index(a), Eigen::Index(b)) = -w(rows[a], cols[b]);
    return -hungarian_min(cost).cost;
}

} // namespace

WeightMatrix build_weight_matrix(std::span<const UserTerminal> weak, std::span<const UserTerminal> strong)
{
    if (weak.empty() || strong.empty())
        throw ConfigError("Both user classes must be nonempty to build the grouping weights.");
    WeightMatrix W;
    W.weights.resize(Eigen::Index(strong.size()), Eigen::Index(weak.size()));
    for (const auto &u : weak)
        W.weak_ids.push_back(u.id);
    for (const auto &u : strong)
        W.strong_ids.push_back(u.id);
    for (std::size_t j = 0; j < strong.size(); ++j)
        for (std::size_t i = 0; i < weak.size(); ++i)
            W.weights(Eigen::Index(j), Eigen::Index(i)) =
                std::hypot(weak[i].position.x - strong[j].position.x, weak[i].position.y - strong[j].position.y);
    return W;
}

double matching_weight(const Eigen::MatrixXd &weights, std::span<const int> perm)
{
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        total += weights(perm[i], Eigen::Index(i));
    return total;
}

GroupAssignment optimal_matching(const WeightMatrix &W)
{
    const Eigen::Index n = W.weights.cols();
    if (n == 0 || W.weights.rows() == 0)
        throw ConfigError("Cannot match empty user classes.");
    if (W.weights.rows() != n)
        throw ConfigError("Matching needs equally sized weak and strong classes; pad with virtual users first.");
    if (!W.weights.allFinite())
        throw std::invalid_argument("Grouping weights must be finite.");
    if (std::size_t(n) != W.weak_ids.size() || std::size_t(n) != W.strong_ids.size())
        throw std::invalid_argument("Weight matrix ids do not match its dimensions.");

    const double best = best_remaining(W.weights, std::vector<char>(std::size_t(n), 0),
                                       std::vector<char>(std::size_t(n), 0));
    const double tol = 1e-9 * (1.0 + std::abs(best));

    // Fix columns one at a time to the smallest row that still completes an optimal matching
    std::vector<char> row_used(std::size_t(n), 0), col_used(std::size_t(n), 0);
    std::vector<int> perm(std::size_t(n), -1);
    double fixed = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        col_used[std::size_t(i)] = 1;
        bool placed = false;
        for (Eigen::Index j = 0; j < n && !placed; ++j)
        {
            if (row_used[std::size_t(j)])
                continue;
            row_used[std::size_t(j)] = 1;
            const double total = fixed + W.weights(j, i) + best_remaining(W.weights, row_used, col_used);
            if (total >= best - tol)
            {
                perm[std::size_t(i)] = int(j);
                fixed += W.weights(j, i);
                placed = true;
            }
            else
                row_used[std::size_t(j)] = 0;
        }
        if (!placed)
            throw NumericError("Matching refinement lost the optimal assignment.");
    }

    GroupAssignment a;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const int j = perm[std::size_t(i)];
        a.pairs.push_back({W.weak_ids[std::size_t(i)], W.strong_ids[std::size_t(j)], W.weights(j, i)});
    }
    a.total_weight = matching_weight(W.weights, perm);
    return a;
}

UniquenessReport verify_unique(const GroupAssignment &a, std::span<const int> weak_ids, std::span<const int> strong_ids)
{
    UniquenessReport rep;
    const std::set<int> weak_set(weak_ids.begin(), weak_ids.end());
    const std::set<int> strong_set(strong_ids.begin(), strong_ids.end());
    std::set<int> seen_weak, seen_strong;

    auto fail = [&](std::string msg)
    {
        rep.passed = false;
        rep.violations.push_back(std::move(msg));
    };

    for (const auto &p : a.pairs)
    {
        if (!weak_set.count(p.weak_id))
            fail("weak id " + std::to_string(p.weak_id) + " is not in the weak class");
        if (!strong_set.count(p.strong_id))
            fail("strong id " + std::to_string(p.strong_id) + " is not in the strong class");
        if (!seen_weak.insert(p.weak_id).second)
            fail("weak id " + std::to_string(p.weak_id) + " appears in more than one group");
        if (!seen_strong.insert(p.strong_id).second)
            fail("strong id " + std::to_string(p.strong_id) + " appears in more than one group");
    }
    for (int id : weak_set)
        if (!seen_weak.count(id))
            fail("weak id " + std::to_string(id) + " is not assigned");
    for (int id : strong_set)
        if (!seen_strong.count(id))
            fail("strong id " + std::to_string(id) + " is not assigned");

    std::set<int> covered = seen_weak;
    covered.insert(seen_strong.begin(), seen_strong.end());
    rep.coverage = covered.size();
    return rep;
}

void write_assignment_csv(std::ostream &os, const GroupAssignment &a)
{
    os << "group,weak_id,strong_id,weight_m\n";
    for (std::size_t g = 0; g < a.pairs.size(); ++g)
        os << (g + 1) << ',' << a.pairs[g].weak_id << ',' << a.pairs[g].strong_id << ',' << a.pairs[g].weight << '\n';
}

} // namespace owcnoma
