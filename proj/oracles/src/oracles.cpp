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
#include "owcnoma/oracles.hpp"

#include "owcnoma/noma_rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace owcnoma::oracle
{

namespace
{

double determinant_rec(const Eigen::MatrixXd &A)
{
    const Eigen::Index n = A.rows();
    if (n == 1)
        return A(0, 0);
    if (n == 2)
        return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    double det = 0.0;
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        for (Eigen::Index r = 1; r < n; ++r)
        {
            Eigen::Index c2 = 0;
            for (Eigen::Index c = 0; c < n; ++c)
                if (c != j)
                    minor(r - 1, c2++) = A(r, c);
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * A(0, j) * determinant_rec(minor);
    }
    return det;
}

double kappa(const OpticalFrontEnd &fe)
{
    const double rf = fe.conversion_factor * fe.responsivity;
    return rf * rf / (2.0 * M_PI * std::exp(1.0));
}

} // namespace

double cofactor_determinant(const Eigen::MatrixXd &A)
{
    if (A.rows() != A.cols() || A.rows() == 0)
        throw std::invalid_argument("Determinant needs a nonempty square matrix.");
    if (A.rows() > 8)
        throw std::invalid_argument("Cofactor expansion is limited to n <= 8.");
    return determinant_rec(A);
}

double direct_rate(const Eigen::MatrixXd &H, double sigma2, double p, double q, int G, double prelog,
                   const OpticalFrontEnd &fe)
{
    const double norm2 = H.squaredNorm();
    if (norm2 == 0.0 || p == 0.0)
        return 0.0;
    const double k = kappa(fe);
    const double scale = k * p / (k * q * norm2 + sigma2);
    Eigen::VectorXd dinv = Eigen::VectorXd::Ones(H.rows());
    dinv(0) = 1.0 / double(G);
    Eigen::MatrixXd A = scale * H * H.transpose() * dinv.asDiagonal();
    A += Eigen::MatrixXd::Identity(H.rows(), H.rows());
    return prelog * std::log2(cofactor_determinant(A));
}

PermutationOptimum brute_force_matching(const Eigen::MatrixXd &weights)
{
    const int n = int(weights.cols());
    if (weights.rows() != weights.cols() || n == 0)
        throw std::invalid_argument("Brute-force matching needs a nonempty square matrix.");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    PermutationOptimum best;
    best.weight = -std::numeric_limits<double>::infinity();
    do
    {
        double w = 0.0;
        for (int i = 0; i < n; ++i)
            w += weights(perm[std::size_t(i)], i);
        if (w > best.weight)
        {
            best.weight = w;
            best.perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

GridOptimum grid_search_group(const GroupProblem &pb, int points)
{
    if (points < 2)
        throw std::invalid_argument("Grid search needs at least two points.");
    const double delta = pb.delta_rel * pb.p_max;
    const double p_st = pb.qos.p_s_threshold;
    const double tol = 1e-12;
    auto strong = [&](double p) { return direct_rate(pb.H_strong, pb.sigma2_strong, p, 0.0, pb.G, pb.prelog, pb.front_end); };
    auto weak = [&](double p, double q) { return direct_rate(pb.H_weak, pb.sigma2_weak, p, q, pb.G, pb.prelog, pb.front_end); };

    GridOptimum out;
    const double cap = std::min(p_st, pb.budget - p_st - delta);
    if (!(cap > 0.0))
        return out;
    // Smallest strong power reaching r_max, or the cap
    double p_s = cap;
    if (strong(cap) >= pb.qos.r_max)
    {
        double lo = 0.0, hi = cap;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (strong(mid) >= pb.qos.r_max ? hi : lo) = mid;
        }
        p_s = hi;
    }
    const double r_s = strong(p_s);
    if (r_s < pb.qos.r_min * (1.0 - tol))
        return out;

    const double lo = p_st + delta;
    const double hi = pb.budget - p_s;
    if (lo > hi)
        return out;
    double best_rate = -1.0;
    for (int i = 0; i < points; ++i)
    {
        const double p = lo + (hi - lo) * double(i) / double(points - 1);
        const double r = weak(p, p_s);
        if (r > pb.qos.r_max * (1.0 + 1e-9) || r < pb.qos.r_min * (1.0 - tol))
            continue;
        if (r > best_rate)
        {
            best_rate = r;
            out.p_w = p;
        }
    }
    if (best_rate < 0.0 || !(best_rate + r_s > 0.0))
        return out;
    out.feasible = true;
    out.p_s = p_s;
    out.rate_weak = best_rate;
    out.rate_strong = r_s;
    return out;
}

GroupProblem random_group_problem(Rng &rng)
{
    GroupProblem pb;
    const int L = 2 + int(uniform_index(rng, 3));
    pb.G = 1 + int(uniform_index(rng, 4));
    pb.prelog = 1.0 / double(L + pb.G - 1);
    pb.front_end.responsivity = 1.0;
    pb.front_end.conversion_factor = 1.0;
    auto random = [&](double scale)
    {
        Eigen::MatrixXd H(L, L);
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j)
                H(i, j) = scale * uniform01(rng);
        return H;
    };
    pb.H_weak = random(1.0);
    pb.H_strong = random(uniform(rng, 1.0, 3.0));
    pb.budget = uniform(rng, 5.0, 200.0);
    pb.p_max = pb.budget;
    pb.qos.p_s_threshold = 0.2 * pb.budget;
    pb.qos.r_min = 0.0;
    const double p_s = pb.qos.p_s_threshold;
    const double full = direct_rate(pb.H_weak, 1.0, pb.budget - p_s, p_s, pb.G, pb.prelog, pb.front_end);
    pb.qos.r_max = uniform(rng, 0.5, 1.5) * full;
    return pb;
}

PairRateModel pair_model(const GroupProblem &pb)
{
    const NoiseCovariance rz = noise_covariance(pb.G, int(pb.H_weak.rows()), 1.0);
    return PairRateModel(UserLink::from_channel(pb.H_weak, rz, pb.sigma2_weak),
                         UserLink::from_channel(pb.H_strong, rz, pb.sigma2_strong), pb.prelog, pb.front_end);
}

Eigen::MatrixXd exhaustive_allocation(std::span<const int> order, const PowerLevels &levels,
                                      const SolutionGrid &solutions)
{
    const int G = int(order.size());
    const int T = levels.T;
    const double ninf = -std::numeric_limits<double>::infinity();
    Eigen::MatrixXd best = Eigen::MatrixXd::Constant(G, T, ninf);

    auto floor_index = [&](double p)
    {
        int idx = 0;
        for (int t = 1; t <= T; ++t)
            if (levels.level(t) <= p * (1.0 + 1e-12))
                idx = t;
        return idx;
    };

    std::vector<int> pick(static_cast<std::size_t>(G), 0);
    for (int rows = 1; rows <= G; ++rows)
        for (int t = 1; t <= T; ++t)
        {
            // Odometer over pick[0..rows-1] in {0..T}
            std::fill(pick.begin(), pick.end(), 0);
            while (true)
            {
                // The last group of the prefix spends first, as in the table recursion
                int idx = t;
                double total = 0.0;
                bool ok = true;
                for (int r = rows; r >= 1 && ok; --r)
                {
                    const int s = pick[std::size_t(r - 1)];
                    if (s == 0)
                        continue;
                    const GroupSolution &sol = solutions[std::size_t(order[std::size_t(r - 1)])][std::size_t(s - 1)];
                    if (idx == 0 || s > idx || !sol.feasible)
                    {
                        ok = false;
                        break;
                    }
                    total += sol.rate();
                    idx = floor_index(std::max(0.0, levels.level(idx) - sol.consumed()));
                }
                if (ok)
                    best(rows - 1, t - 1) = std::max(best(rows - 1, t - 1), total);

                int d = 0;
                while (d < rows && ++pick[std::size_t(d)] > T)
                    pick[std::size_t(d++)] = 0;
                if (d == rows)
                    break;
            }
        }
    return best;
}

} // namespace owcnoma::oracle
