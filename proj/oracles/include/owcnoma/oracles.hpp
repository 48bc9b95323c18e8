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
#ifndef OWCNOMA_ORACLES_HPP
#define OWCNOMA_ORACLES_HPP

// Slow reference implementations used to cross-check the production code. None of them
// share an algorithmic path with the code they check.

#include "owcnoma/channel.hpp"
#include "owcnoma/power_alloc.hpp"
#include "owcnoma/rng.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace owcnoma::oracle
{

// Laplace cofactor expansion along the first row. Exponential cost; meant for n <= 8.
double cofactor_determinant(const Eigen::MatrixXd &A);

// Rate of one user straight from the raw gains:
//   b log2 det(I + k p H H^T D^{-1} / (k q ||H||_F^2 + sigma2)),  D = diag(G, 1, ..., 1),
// with k = c rho^2 f^2, p the user's own power and q the power of the signal it cannot
// cancel (0 for the strong user).
double direct_rate(const Eigen::MatrixXd &H, double sigma2, double p, double q, int G, double prelog,
                   const OpticalFrontEnd &fe);

struct PermutationOptimum
{
    std::vector<int> perm; // weak column i -> strong row perm[i]
    double weight = 0.0;   // summed in column order
};

// Maximum-weight perfect matching by enumerating all n! permutations.
PermutationOptimum brute_force_matching(const Eigen::MatrixXd &weights);

struct GroupProblem
{
    Eigen::MatrixXd H_weak;
    Eigen::MatrixXd H_strong;
    double sigma2_weak = 1.0;
    double sigma2_strong = 1.0;
    int G = 1;
    double prelog = 1.0;
    OpticalFrontEnd front_end;
    double budget = 1.0;
    double p_max = 1.0;
    QoSBounds qos;
    double delta_rel = 1e-9;
};

struct GridOptimum
{
    bool feasible = false;
    double p_w = 0.0;
    double p_s = 0.0;
    double rate_weak = 0.0;
    double rate_strong = 0.0;
    double rate() const { return rate_weak + rate_strong; }
};

// The per-group problem solved by sampling p_w on `points` equally spaced values of
// [P_s^T + delta, budget - p_s]. The strong power follows the same rule as the solver, found
// here by bisection on direct_rate. Among grid points that respect the weak user's rate
// bounds, the largest group rate wins and ties go to the smaller power.
GridOptimum grid_search_group(const GroupProblem &problem, int points = 10000);

// Random per-group instance: entries of both channels uniform on [0, 1) (strong channel
// scaled up by 1..3), sigma2 = 1, unit front end, P_s^T = 0.2 budget, r_min = 0 and an r_max
// that binds on roughly half of the draws.
GroupProblem random_group_problem(Rng &rng);

// The production rate model for a problem (referred channels, unit-variance covariance).
PairRateModel pair_model(const GroupProblem &problem);

// Best network rate of the first `rows` groups of `order` within level t, for every row and
// level, by enumerating every assignment of a level (or none) to every group. Budget that a
// group leaves unused is floored to the grid and handed on, exactly as the allocation tables
// define it. result(row-1, t-1); -inf where no assignment is possible.
Eigen::MatrixXd exhaustive_allocation(std::span<const int> order, const PowerLevels &levels,
                                      const SolutionGrid &solutions);

} // namespace owcnoma::oracle

#endif
