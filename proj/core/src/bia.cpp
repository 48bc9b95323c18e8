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
#include "owcnoma/bia.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace owcnoma::bia
{

namespace
{
std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t cap)
{
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i)
    {
        if (base != 0 && v > cap / base)
            throw std::length_error("BIA transmission block exceeds the configured slot cap.");
        v *= base;
    }
    return v;
}

// Digits of `index` in base `base`, most significant first, `n` digits.
std::vector<int> digits(std::int64_t index, int base, int n)
{
    std::vector<int> d(std::size_t(n), 0);
    for (int i = n - 1; i >= 0; --i)
    {
        d[std::size_t(i)] = int(index % base);
        index /= base;
    }
    return d;
}

std::int64_t from_digits(const std::vector<int> &d, int base)
{
    std::int64_t v = 0;
    for (int x : d)
        v = v * base + x;
    return v;
}

// Tuple of the other groups' modes (all groups except g), in ascending group order.
std::vector<int> drop_group(const std::vector<int> &modes, int g)
{
    std::vector<int> out;
    out.reserve(modes.size() - 1);
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (int(i) != g)
            out.push_back(modes[i]);
    return out;
}
} // namespace

std::int64_t TransmissionBlock::blocks_per_group() const
{
    return alignment_blocks.empty() ? 0 : std::int64_t(alignment_blocks.front().size());
}

TransmissionBlock build_block(int L, int G, std::int64_t slot_cap)
{
    if (L < 2)
        throw std::invalid_argument("BIA needs at least two reception modes (L >= 2).");
    if (G < 1)
        throw std::invalid_argument("BIA needs at least one group.");

    TransmissionBlock b;
    b.num_aps = L;
    b.num_groups = G;
    const int base = L - 1;
    b.subblock1_len = checked_pow(base, G, slot_cap);
    const std::int64_t per_group = checked_pow(base, G - 1, slot_cap);
    if (per_group > slot_cap / G)
        throw std::length_error("BIA transmission block exceeds the configured slot cap.");
    b.subblock2_len = std::int64_t(G) * per_group;
    if (b.subblock1_len > slot_cap - b.subblock2_len)
        throw std::length_error("BIA transmission block exceeds the configured slot cap.");
    b.num_slots = b.subblock1_len + b.subblock2_len;

    b.modes.assign(std::size_t(G), std::vector<int>(std::size_t(b.num_slots), 0));
    b.alignment_blocks.assign(std::size_t(G), std::vector<std::vector<std::int64_t>>(std::size_t(per_group)));

    // Sub-block 1
    for (std::int64_t s = 0; s < b.subblock1_len; ++s)
    {
        const auto m = digits(s, base, G);
        for (int g = 0; g < G; ++g)
        {
            b.modes[std::size_t(g)][std::size_t(s)] = m[std::size_t(g)];
            const std::int64_t zeta = from_digits(drop_group(m, g), base);
            b.alignment_blocks[std::size_t(g)][std::size_t(zeta)].push_back(s);
        }
    }

    // Sub-block 2: completion slots, grouped by owner
    std::int64_t slot = b.subblock1_len;
    for (int g = 0; g < G; ++g)
        for (std::int64_t zeta = 0; zeta < per_group; ++zeta, ++slot)
        {
            const auto others = digits(zeta, base, G - 1);
            std::size_t k = 0;
            for (int h = 0; h < G; ++h)
                b.modes[std::size_t(h)][std::size_t(slot)] = (h == g) ? L - 1 : others[k++];
            b.alignment_blocks[std::size_t(g)][std::size_t(zeta)].push_back(slot);
        }

    return b;
}

PrecodingMatrix precoding_matrix(const TransmissionBlock &block, int g)
{
    if (g < 0 || g >= block.num_groups)
        throw std::out_of_range("Group index out of range.");
    PrecodingMatrix p;
    p.group = g;
    p.num_aps = block.num_aps;
    p.num_slots = block.num_slots;
    p.num_blocks = block.blocks_per_group();
    const auto &blocks = block.alignment_blocks[std::size_t(g)];
    for (std::int64_t zeta = 0; zeta < std::int64_t(blocks.size()); ++zeta)
        for (std::int64_t s : blocks[std::size_t(zeta)])
            p.placements.push_back({s, zeta});
    std::sort(p.placements.begin(), p.placements.end(), [](const auto &a, const auto &b)
              { return a.slot != b.slot ? a.slot < b.slot : a.block < b.block; });
    return p;
}

Eigen::MatrixXd PrecodingMatrix::dense() const
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows(), cols());
    const Eigen::Index L = num_aps;
    for (const auto &pl : placements)
        m.block(Eigen::Index(pl.slot) * L, Eigen::Index(pl.block) * L, L, L).setIdentity();
    return m;
}

Eigen::VectorXd PrecodingMatrix::apply(const Eigen::VectorXd &symbols) const
{
    if (symbols.size() != cols())
        throw std::invalid_argument("Symbol vector length does not match the precoder.");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(rows());
    const Eigen::Index L = num_aps;
    for (const auto &pl : placements)
        out.segment(Eigen::Index(pl.slot) * L, L) += symbols.segment(Eigen::Index(pl.block) * L, L);
    return out;
}

Rational alignment_ratio(int L, int G)
{
    if (L < 2 || G < 1)
        throw std::invalid_argument("alignment_ratio needs L >= 2 and G >= 1.");
    return Rational{1, std::int64_t(L) + std::int64_t(G) - 1};
}

ConditionReport verify_decodability(const TransmissionBlock &block)
{
    ConditionReport rep{"decodability", {}};
    const int L = block.num_aps;
    for (int g = 0; g < block.num_groups; ++g)
    {
        const auto &blocks = block.alignment_blocks[std::size_t(g)];
        for (std::int64_t zeta = 0; zeta < std::int64_t(blocks.size()); ++zeta)
        {
            const auto &slots = blocks[std::size_t(zeta)];
            std::set<int> seen;
            bool in_range = true;
            for (std::int64_t s : slots)
            {
                if (s < 0 || s >= block.num_slots)
                {
                    in_range = false;
                    break;
                }
                seen.insert(block.modes[std::size_t(g)][std::size_t(s)]);
            }
            if (!in_range)
                rep.violations.push_back({g, zeta, slots, "slot index outside the transmission block"});
            else if (std::int64_t(slots.size()) != L)
                rep.violations.push_back({g, zeta, slots,
                                          "alignment block has " + std::to_string(slots.size()) + " slots, expected " +
                                              std::to_string(L)});
            else if (int(seen.size()) != L)
                rep.violations.push_back({g, zeta, slots,
                                          "group cycles through " + std::to_string(seen.size()) +
                                              " distinct modes, expected " + std::to_string(L)});
        }
    }
    return rep;
}

ConditionReport verify_alignment(const TransmissionBlock &block)
{
    ConditionReport rep{"alignment", {}};
    for (int g = 0; g < block.num_groups; ++g)
    {
        const auto &blocks = block.alignment_blocks[std::size_t(g)];
        for (std::int64_t zeta = 0; zeta < std::int64_t(blocks.size()); ++zeta)
        {
            const auto &slots = blocks[std::size_t(zeta)];
            if (slots.empty())
                continue;
            for (int h = 0; h < block.num_groups; ++h)
            {
                if (h == g)
                    continue;
                const auto &mh = block.modes[std::size_t(h)];
                const int first = mh[std::size_t(slots.front())];
                const bool constant = std::all_of(slots.begin(), slots.end(), [&](std::int64_t s)
                                                  { return mh[std::size_t(s)] == first; });
                if (!constant)
                    rep.violations.push_back({g, zeta, slots,
                                              "group " + std::to_string(h) +
                                                  " changes reception mode inside this alignment block"});
            }
        }
    }
    return rep;
}

void write_schedule_csv(std::ostream &os, const TransmissionBlock &block)
{
    os << "slot,group,mode\n";
    for (std::int64_t s = 0; s < block.num_slots; ++s)
        for (int g = 0; g < block.num_groups; ++g)
            os << (s + 1) << ',' << (g + 1) << ',' << (block.modes[std::size_t(g)][std::size_t(s)] + 1) << '\n';
}

} // namespace owcnoma::bia
