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
#ifndef OWCNOMA_GROUPING_HPP
#define OWCNOMA_GROUPING_HPP

#include "owcnoma/geometry.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace owcnoma
{

// weights(j, i): planar distance between strong user j (row) and weak user i (column).
struct WeightMatrix
{
    std::vector<int> weak_ids;
    std::vector<int> strong_ids;
    Eigen::MatrixXd weights;
};

struct UserPair
{
    int weak_id = 0;
    int strong_id = 0;
    double weight = 0.0;
};

struct GroupAssignment
{
    std::vector<UserPair> pairs; // ordered by weak column
    double total_weight = 0.0;   // summed in pair order
};

WeightMatrix build_weight_matrix(std::span<const UserTerminal> weak, std::span<const UserTerminal> strong);

// Maximum-weight perfect matching (Hungarian algorithm, O(n^3)).
//
// Among all optimal matchings the one whose strong-row sequence, read in weak-column order,
// is lexicographically smallest is returned, so equal-weight alternatives resolve the same way
// on every platform. Requires a square, nonempty matrix with finite entries.
GroupAssignment optimal_matching(const WeightMatrix &W);

// Total weight of the perfect matching that pairs weak column i with strong row perm[i].
double matching_weight(const Eigen::MatrixXd &weights, std::span<const int> perm);

struct UniquenessReport
{
    bool passed = true;
    std::size_t coverage = 0; // distinct users covered by the assignment
    std::vector<std::string> violations;
};

// Checks that the assignment is a bijection between the given weak and strong id sets.
UniquenessReport verify_unique(const GroupAssignment &a, std::span<const int> weak_ids, std::span<const int> strong_ids);

// group,weak_id,strong_id,weight with 1-based group numbers.
void write_assignment_csv(std::ostream &os, const GroupAssignment &a);

} // namespace owcnoma

#endif
