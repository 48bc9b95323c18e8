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
#ifndef OWCNOMA_BIA_HPP
#define OWCNOMA_BIA_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace owcnoma::bia
{

// Exact rational number with positive denominator, reduced to lowest terms.
struct Rational
{
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return double(num) / double(den); }
    bool operator==(const Rational &) const = default;
};

// All indices are 0-based: slots 0..V-1, groups 0..G-1, reception modes 0..L-1.
struct TransmissionBlock
{
    int num_aps = 0;    // L
    int num_groups = 0; // G
    std::int64_t num_slots = 0;
    std::int64_t subblock1_len = 0; // (L-1)^G
    std::int64_t subblock2_len = 0; // G (L-1)^(G-1)

    // alignment_blocks[g][zeta] lists the L slots of group g's zeta-th alignment block,
    // in the order the group cycles through its reception modes.
    std::vector<std::vector<std::vector<std::int64_t>>> alignment_blocks;

    // modes[g][slot]: reception mode used by group g's users in that slot.
    std::vector<std::vector<int>> modes;

    std::int64_t blocks_per_group() const;
};

// Block-sparse precoder of one group: (L V) x (L (L-1)^(G-1)) with an L x L identity at
// block position (slot, zeta) for every slot of alignment block zeta.
struct PrecodingMatrix
{
    int group = 0;
    int num_aps = 0;
    std::int64_t num_slots = 0;
    std::int64_t num_blocks = 0;

    struct Placement
    {
        std::int64_t slot;
        std::int64_t block;
    };
    std::vector<Placement> placements;

    Eigen::Index rows() const { return Eigen::Index(num_aps * num_slots); }
    Eigen::Index cols() const { return Eigen::Index(num_aps * num_blocks); }

    Eigen::MatrixXd dense() const;

    // B u for a stacked symbol vector u of length cols().
    Eigen::VectorXd apply(const Eigen::VectorXd &symbols) const;
};

struct Violation
{
    int group = 0;
    std::int64_t block = 0;
    std::vector<std::int64_t> slots;
    std::string message;
};

struct ConditionReport
{
    std::string condition;
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
};

inline constexpr std::int64_t default_slot_cap = std::int64_t(1) << 22;

// Supersymbol construction: sub-block 1 enumerates every combination of the G groups'
// modes over {0..L-2} (group 0 most significant); sub-block 2 holds, for each group in
// ascending order, one completion slot per alignment block where that group switches to
// mode L-1 while every other group keeps the block's modes.
//
// Throws std::invalid_argument for L < 2 or G < 1 and std::length_error when the block
// would exceed `slot_cap` slots.
TransmissionBlock build_block(int L, int G, std::int64_t slot_cap = default_slot_cap);

PrecodingMatrix precoding_matrix(const TransmissionBlock &block, int g);

// Fraction of the transmission block each group's alignment blocks occupy: 1/(L+G-1).
Rational alignment_ratio(int L, int G);

// Every alignment block spans L slots with L distinct modes of the owning group.
ConditionReport verify_decodability(const TransmissionBlock &block);

// Within each alignment block of group g every other group holds a constant mode.
ConditionReport verify_alignment(const TransmissionBlock &block);

// slot,group,mode rows (1-based, as in the usual tabular presentation).
void write_schedule_csv(std::ostream &os, const TransmissionBlock &block);

} // namespace owcnoma::bia

#endif
