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
#ifndef OWCNOMA_BASELINES_HPP
#define OWCNOMA_BASELINES_HPP

#include "owcnoma/grouping.hpp"
#include "owcnoma/power_alloc.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace owcnoma
{

enum class SchemeId
{
    dynamic_noma,
    baseline1,
    baseline2,
    conventional_noma,
    plain_bia
};

inline constexpr SchemeId all_schemes[] = {SchemeId::dynamic_noma, SchemeId::baseline1, SchemeId::baseline2,
                                           SchemeId::conventional_noma, SchemeId::plain_bia};

const char *to_string(SchemeId s);
// Throws ConfigError for unknown names.
SchemeId parse_scheme(std::string_view name);

// Id of the padding user added when the classes differ in size.
inline constexpr int virtual_user_id = -1;

struct UserChannel
{
    int id = 0;
    Eigen::MatrixXd H; // L x L optical gains
    double sigma2 = 0.0;

    // Gain of the single best photodiode, max_m sum_l H(m, l).
    double best_mode_gain() const;
    double aggregate_gain() const { return H.sum(); }
};

// Everything a scheme needs for one drop. `users` is indexed by user id.
struct SchemeInputs
{
    std::vector<UserChannel> users;
    GroupAssignment groups; // weak/strong pairs, virtual_user_id for padding
    std::vector<int> order; // group processing order of the dynamic allocator
    int L = 0;
    PowerLevels levels;
    QoSBounds qos;
    SolverConfig solver;
    OpticalFrontEnd front_end;
    double beta_w = 0.8; // conventional NOMA fixed split
    double beta_s = 0.2;
};

struct SchemeOutcome
{
    SchemeId scheme = SchemeId::dynamic_noma;
    std::vector<double> user_rates; // bits/s/Hz, indexed by user id
    double consumed = 0.0;          // W
    int groups = 0;                 // groups (or users, for plain BIA) formed
    int groups_served = 0;
    int t_star = 0;                 // selected level, 0 when not applicable
    bool infeasible = false;        // no feasible network solution / some group infeasible
    std::uint64_t evaluations = 0;  // rate-function evaluations spent by the solver

    double sum_rate() const;
};

// BIA outer precoder with per-group log-det rates; the pair models used by the dynamic
// allocator and Baseline 1.
std::vector<PairRateModel> bia_pair_models(const SchemeInputs &in);
// Orthogonal per-group resource blocks (prelog 1/G), best single photodiode per user.
std::vector<PairRateModel> orthogonal_pair_models(const SchemeInputs &in);

SchemeOutcome dynamic_noma(const SchemeInputs &in);
SchemeOutcome baseline1(const SchemeInputs &in);
SchemeOutcome baseline2(const SchemeInputs &in);
SchemeOutcome conventional_noma(const SchemeInputs &in);
SchemeOutcome plain_bia(const SchemeInputs &in);

SchemeOutcome run_scheme(SchemeId s, const SchemeInputs &in);

// Best-with-worst pairing by aggregate gain (descending, ties by id). With an odd count the
// median user gets a virtual partner.
GroupAssignment pair_by_gain(const std::vector<UserChannel> &users);

} // namespace owcnoma

#endif
