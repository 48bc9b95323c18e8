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
#include "owcnoma/errors.hpp"
#include "owcnoma/grouping.hpp"
#include "owcnoma/harness.hpp"
#include "owcnoma/oracles.hpp"
#include "owcnoma/power_alloc.hpp"
#include "owcnoma/rng.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace owcnoma;

namespace
{

// 0 quiet, 1 info (default), 2 debug. Set through OWCNOMA_LOG.
int log_level()
{
    const char *v = std::getenv("OWCNOMA_LOG");
    if (!v)
        return 1;
    const std::string s(v);
    if (s == "quiet" || s == "0")
        return 0;
    if (s == "debug" || s == "2")
        return 2;
    return 1;
}

void info(const std::string &msg)
{
    if (log_level() >= 1)
        std::cerr << msg << '\n';
}

std::vector<SchemeId> parse_schemes(const std::vector<std::string> &names)
{
    std::vector<SchemeId> out;
    for (const auto &n : names)
        out.push_back(parse_scheme(n));
    return out;
}

bool all_infeasible(const std::vector<MetricsRecord> &records)
{
    for (const auto &r : records)
        if (!r.infeasible)
            return false;
    return !records.empty();
}

int cmd_run(const std::string &config, const std::string &scheme, const std::string &out)
{
    const ScenarioConfig cfg = load_config(config);
    const SchemeId s = parse_scheme(scheme);
    const SchemeId one[] = {s};
    const auto per_drop = run_drops(cfg, one);
    std::vector<MetricsRecord> records;
    for (const auto &d : per_drop)
        records.push_back(d[0]);
    if (out.empty())
        write_records_csv(std::cout, records);
    else
    {
        std::ofstream f(out);
        if (!f)
            throw ConfigError("Cannot write '" + out + "'.");
        write_records_csv(f, records);
    }
    double mean = 0.0;
    for (const auto &r : records)
        mean += r.sum_rate_bps / double(records.size());
    info(std::string(to_string(s)) + ": mean sum rate " + std::to_string(mean) + " bit/s over " +
         std::to_string(records.size()) + " drops");
    return all_infeasible(records) ? 2 : 0;
}

int cmd_sweep(const std::string &config, const std::string &axis, const std::vector<double> &values,
              const std::vector<std::string> &schemes, const std::string &out)
{
    const ScenarioConfig cfg = load_config(config);
    const auto ids = parse_schemes(schemes);
    const bool verbose = log_level() >= 2;
    const auto result = sweep(cfg, parse_axis(axis), values, ids, [&](std::size_t done, std::size_t total) {
        if (verbose)
            std::cerr << "point " << done << "/" << total << '\n';
    });
    std::ofstream f(out);
    if (!f)
        throw ConfigError("Cannot write '" + out + "'.");
    write_sweep_csv(f, result);
    info("wrote " + std::to_string(result.points.size()) + " rows to " + out);
    for (const auto &p : result.points)
        if (!all_infeasible(p.drops))
            return 0;
    return 2;
}

int cmd_verify(int L, int G, const std::string &schedule)
{
    const auto block = bia::build_block(L, G);
    std::cout << "L=" << L << " G=" << G << " slots=" << block.num_slots << " subblock1=" << block.subblock1_len
              << " subblock2=" << block.subblock2_len << " blocks_per_group=" << block.blocks_per_group() << '\n';
    const auto ratio = bia::alignment_ratio(L, G);
    std::cout << "alignment_ratio=" << ratio.num << "/" << ratio.den << '\n';
    bool ok = true;
    for (const auto &rep : {bia::verify_decodability(block), bia::verify_alignment(block)})
    {
        std::cout << rep.condition << ": " << (rep.passed() ? "pass" : "FAIL") << '\n';
        for (const auto &v : rep.violations)
            std::cout << "  group " << v.group << " block " << v.block << ": " << v.message << '\n';
        ok = ok && rep.passed();
    }
    if (!schedule.empty())
    {
        std::ofstream f(schedule);
        if (!f)
            throw ConfigError("Cannot write '" + schedule + "'.");
        bia::write_schedule_csv(f, block);
    }
    return ok ? 0 : 1;
}

int cmd_oracle(std::uint64_t seed)
{
    Rng rng(seed);
    int matching = 0;
    for (int i = 0; i < 100; ++i)
    {
        const int n = 1 + int(uniform_index(rng, 7));
        WeightMatrix W;
        W.weights.resize(n, n);
        for (int a = 0; a < n; ++a)
        {
            W.weak_ids.push_back(a);
            W.strong_ids.push_back(n + a);
            for (int b = 0; b < n; ++b)
                W.weights(a, b) = uniform(rng, 0.0, 8.0);
        }
        matching += optimal_matching(W).total_weight == oracle::brute_force_matching(W.weights).weight;
    }
    std::cout << "matching vs brute force: " << matching << "/100 exact\n";

    int solver = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
    {
        const auto pb = oracle::random_group_problem(rng);
        const auto s = solve_group(0, oracle::pair_model(pb), pb.budget, pb.p_max, pb.qos);
        const auto ref = oracle::grid_search_group(pb);
        if (s.feasible != ref.feasible)
            continue;
        const double err = ref.feasible ? std::abs(s.rate() - ref.rate()) / ref.rate() : 0.0;
        worst = std::max(worst, err);
        solver += err <= 1e-3;
    }
    std::cout << "group solver vs grid search: " << solver << "/50 within 1e-3 (worst " << worst << ")\n";

    int dp = 0, dp_total = 0;
    for (int G = 1; G <= 3; ++G)
        for (int T = 1; T <= 8; ++T)
        {
            const auto lv = discretize(uniform(rng, 1.0, 10.0), T);
            SolutionGrid grid(static_cast<std::size_t>(G));
            for (int g = 0; g < G; ++g)
                for (int t = 1; t <= T; ++t)
                {
                    GroupSolution s;
                    s.feasible = uniform01(rng) > 0.2;
                    s.status = s.feasible ? SolveStatus::feasible : SolveStatus::infeasible_budget;
                    s.rate_weak = uniform(rng, 0, 2);
                    s.rate_strong = uniform(rng, 0, 2);
                    const double spend = lv.level(t) * uniform(rng, 0.3, 1.0);
                    s.p_w = 0.7 * spend;
                    s.p_s = 0.3 * spend;
                    grid[std::size_t(g)].push_back(s);
                }
            std::vector<int> order(static_cast<std::size_t>(G));
            for (int g = 0; g < G; ++g)
                order[std::size_t(g)] = g;
            const auto tab = dp_combine(order, lv, grid);
            const auto ref = oracle::exhaustive_allocation(order, lv, grid);
            const double want = std::max(0.0, ref(G - 1, T - 1));
            dp += std::abs(tab.R(G - 1, T - 1) - want) <= 1e-6 * std::max(1.0, want);
            ++dp_total;
        }
    std::cout << "dp vs exhaustive: " << dp << "/" << dp_total << '\n';
    return matching == 100 && solver == 50 && dp == dp_total ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-user VCSEL optical wireless NOMA simulator"};
    app.require_subcommand(1);

    std::string config, scheme = "dynamic_noma", out, axis, schedule;
    std::vector<double> values;
    std::vector<std::string> schemes{"dynamic_noma", "baseline1", "baseline2", "conventional_noma", "plain_bia"};
    int L = 2, G = 2;
    std::uint64_t seed = 1;

    auto *run = app.add_subcommand("run", "Run Monte Carlo drops of one scheme; per-drop CSV");
    run->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--scheme", scheme, "Scheme id");
    run->add_option("--out", out, "Output CSV (default stdout)");

    auto *sw = app.add_subcommand("sweep", "Sweep one scenario parameter");
    sw->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
    sw->add_option("--axis", axis, "users, blockage, snr, beam_waist or tx_power")->required();
    sw->add_option("--values", values, "Axis values")->required()->delimiter(',');
    sw->add_option("--schemes", schemes, "Scheme ids")->delimiter(',');
    sw->add_option("--out", out, "Output CSV")->required();

    auto *ver = app.add_subcommand("verify", "Build a BIA block and check its conditions");
    ver->add_option("--L", L, "Number of APs")->required();
    ver->add_option("--G", G, "Number of groups")->required();
    ver->add_option("--schedule", schedule, "Write the slot schedule CSV here");

    auto *orc = app.add_subcommand("oracle", "Run the brute-force equivalence suites");
    orc->add_option("--seed", seed, "Instance seed");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (*run)
            return cmd_run(config, scheme, out);
        if (*sw)
            return cmd_sweep(config, axis, values, schemes, out);
        if (*ver)
            return cmd_verify(L, G, schedule);
        if (*orc)
            return cmd_oracle(seed);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
