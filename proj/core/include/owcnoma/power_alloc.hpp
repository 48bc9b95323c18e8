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
#ifndef OWCNOMA_POWER_ALLOC_HPP
#define OWCNOMA_POWER_ALLOC_HPP

#include "owcnoma/noma_rate.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace owcnoma
{

inline constexpr double infeasible_rate = -std::numeric_limits<double>::infinity();

struct PowerLevels
{
    double p_max = 0.0;
    int T = 0;
    std::vector<double> levels; // levels[t-1] = t p_max / T

    // 1-based access, level(T) == p_max exactly.
    double level(int t) const { return levels[std::size_t(t - 1)]; }
};

PowerLevels discretize(double p_max, int T);

// Greatest level index t with level(t) <= p (relative tolerance 1e-12), nullopt below level(1).
std::optional<int> floor_to_level(double p, const PowerLevels &levels);

struct QoSBounds
{
    double r_min = 0.0;           // per user [bits/s/Hz]
    double r_max = 1.0;           // per user [bits/s/Hz]
    double p_s_threshold = 0.0;   // P_s^T [W]
    double r_min_net = 0.0;       // network [bits/s/Hz]
    double r_max_net = std::numeric_limits<double>::infinity();

    void validate(std::size_t num_users) const;
};

struct SolverConfig
{
    double tol_dinkelbach = 1e-6;
    double step = 0.05;      // initial multiplier step, all four multipliers
    double step_decay = 0.99;
    int max_outer = 500;
    int max_inner = 200;
    double delta_rel = 1e-9; // strictness margin of p_w > P_s^T, relative to p_max
    double inner_tol = 1e-10;
};

// Multipliers are kept in normalised units (powers divided by the group budget).
struct DinkelbachState
{
    double xi = 0.0;         // rate per watt
    double alpha = 0.0;      // budget
    double mu = 0.0;         // p_w above P_s^T
    double lambda_max = 0.0; // weak rate <= r_max
    double nu_min = 0.0;     // weak rate >= demand
    int tau = 0;
};

enum class SolveStatus
{
    feasible,
    infeasible_budget, // no room for p_w > P_s^T or for any strong power
    infeasible_qos,    // r_min cannot be met within the budget
    not_converged
};

const char *to_string(SolveStatus s);

struct SolverDiagnostics
{
    int outer_iterations = 0;
    int inner_iterations = 0;
    double residual = 0.0;          // |R_g - xi P| at the last outer iterate
    bool gradient_converged = false; // projected-gradient iterate matched the KKT point unaided
    double stationarity = 0.0;
    double max_slackness = 0.0;      // largest multiplier * slack product
    std::uint64_t evaluations = 0;
};

struct GroupSolution
{
    int group = 0;
    double budget = 0.0;
    double p_w = 0.0;
    double p_s = 0.0;
    double rate_weak = 0.0;
    double rate_strong = 0.0;
    double target_weak = 0.0; // demand the weak user was served at
    bool feasible = false;
    SolveStatus status = SolveStatus::infeasible_budget;
    DinkelbachState state;
    SolverDiagnostics diagnostics;

    double consumed() const { return feasible ? p_w + p_s : 0.0; }
    double rate() const { return feasible ? rate_weak + rate_strong : infeasible_rate; }
};

// Maximum group rate within `budget`:
//
//  1. The strong user is served at the highest power the NOMA ordering allows,
//     p_s = min(P_s^T, power reaching r_max, budget - P_s^T - delta).
//  2. The weak user's demand is r_max, reduced to what the remaining budget supports; below
//     r_min the group is infeasible.
//  3. Dinkelbach iterations on R_g / (p_w + p_s) with the demand as a rate floor select the
//     weak power. Each parametric subproblem runs projected multiplier updates on the
//     Lagrangian and is then closed by an exact KKT step on the feasible interval, so the
//     returned point is the KKT point whether or not the gradient phase settled on its own.
//
// Virtual users (UserLink::virtual_user) get zero power and no rate constraints.
GroupSolution solve_group(int g, const PairRateModel &model, double budget, double p_max, const QoSBounds &qos,
                          const SolverConfig &cfg = {});

// solutions[g][t-1] for every group and level.
using SolutionGrid = std::vector<std::vector<GroupSolution>>;

SolutionGrid solve_all(std::span<const PairRateModel> models, const PowerLevels &levels, const QoSBounds &qos,
                       const SolverConfig &cfg = {});

// Per-user rows: the weak user of group g is row 2g, the strong user row 2g+1.
struct AllocationTables
{
    int G = 0;
    int T = 0;
    std::vector<int> order;   // groups in processing order
    Eigen::MatrixXd R;        // G x T; row G'-1 uses the first G' groups of `order`
    Eigen::MatrixXi served;   // groups actually served in each cell
    Eigen::MatrixXd consumed; // power consumed in each cell
    std::vector<Eigen::MatrixXd> Tgt; // per row G': 2G x T achieved per-user rates
    std::vector<Eigen::MatrixXd> Pw;  // per row G': 2G x T per-user powers

    // Level chosen for group order[G'-1] in cell (G', t) and the level index left for
    // the previous row (0 = nothing left); choice 0 means the group was skipped.
    Eigen::MatrixXi choice;
    Eigen::MatrixXi remainder;
};

// Forward recursion over groups in `order`. For every level t the group either stays
// unserved or is solved with some budget level s <= t; what it leaves of level t is floored
// to the grid and handed to the previous groups.
AllocationTables dp_combine(std::span<const int> order, const PowerLevels &levels, const SolutionGrid &solutions);

struct Selection
{
    int G_star = 0; // 1-based row
    int t_star = 0; // 1-based level
    double rate = 0.0;
    int served = 0;
    double consumed = 0.0;
};

// Maximises the network rate over all unmasked cells; ties prefer more served groups, then
// a smaller level, then a smaller row. Throws InfeasibleError if every cell is masked.
Selection select_solution(const AllocationTables &tables, const QoSBounds &qos, double p_max);

// R, Tgt and Pw tables as CSV; infeasible cells are written empty.
void write_rate_table_csv(std::ostream &os, const AllocationTables &tables);
void write_user_table_csv(std::ostream &os, const AllocationTables &tables, const std::vector<Eigen::MatrixXd> &table,
                          const std::string &value_name);

} // namespace owcnoma

#endif
