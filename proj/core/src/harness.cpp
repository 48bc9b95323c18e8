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
#include "owcnoma/harness.hpp"

#include "owcnoma/errors.hpp"
#include "owcnoma/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace owcnoma
{

namespace
{

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double kappa(const OpticalFrontEnd &fe)
{
    const double rf = fe.conversion_factor * fe.responsivity;
    return entropy_gap * rf * rf;
}

// Pads the smaller class with virtual users (zero weight to everyone) and matches.
GroupAssignment group_users(const std::vector<UserTerminal> &users, const Classification &cls, WeightMatrix &W)
{
    std::vector<UserTerminal> weak, strong;
    for (int id : cls.weak)
        weak.push_back(users[std::size_t(id)]);
    for (int id : cls.strong)
        strong.push_back(users[std::size_t(id)]);

    if (weak.empty() || strong.empty())
    {
        // A single class: every user is paired with a virtual partner
        const auto &real = weak.empty() ? strong : weak;
        W.weak_ids.clear();
        W.strong_ids.clear();
        GroupAssignment a;
        for (const auto &u : real)
        {
            if (weak.empty())
                a.pairs.push_back({virtual_user_id, u.id, 0.0});
            else
                a.pairs.push_back({u.id, virtual_user_id, 0.0});
        }
        W.weights = Eigen::MatrixXd::Zero(Eigen::Index(a.pairs.size()), Eigen::Index(a.pairs.size()));
        return a;
    }

    W = build_weight_matrix(weak, strong);
    const Eigen::Index n = std::max(W.weights.rows(), W.weights.cols());
    if (W.weights.rows() != W.weights.cols())
    {
        Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n);
        padded.topLeftCorner(W.weights.rows(), W.weights.cols()) = W.weights;
        W.weights = padded;
        W.weak_ids.resize(std::size_t(n), virtual_user_id);
        W.strong_ids.resize(std::size_t(n), virtual_user_id);
    }
    return optimal_matching(W);
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <typename F>
double mean_of(const std::vector<MetricsRecord> &drops, F &&f)
{
    std::vector<double> v;
    v.reserve(drops.size());
    for (const auto &r : drops)
        v.push_back(f(r));
    return v.empty() ? 0.0 : stats::mean(v);
}

} // namespace

double median_snr_db(const ScenarioConfig &cfg, std::span<const double> sigma2)
{
    std::vector<double> snr;
    for (double s : sigma2)
        snr.push_back(kappa(cfg.front_end) * cfg.p_max() / (double(cfg.num_users) * s));
    return 10.0 * std::log10(median(snr));
}

Drop build_drop(const ScenarioConfig &cfg, std::uint64_t index)
{
    Drop d;
    d.index = index;
    d.seed = mix_seed(cfg.seed, index);
    Rng rng(d.seed);

    d.aps = place_ap_grid(cfg.room, cfg.ap_rows, cfg.ap_cols, cfg.array_side);
    const std::size_t L = d.aps.size();
    const std::size_t K = std::size_t(cfg.num_users);

    for (std::size_t k = 0; k < K; ++k)
    {
        UserTerminal u;
        u.id = int(k);
        if (cfg.placement == PlacementRule::fixed)
            u.position = cfg.fixed_positions[k];
        else
        {
            const double x = uniform(rng, 0.0, cfg.room.width);
            const double y = uniform(rng, 0.0, cfg.room.depth);
            u.position = {x, y, cfg.user_height};
        }
        d.users.push_back(u);
    }
    d.blockage = apply_blockage(rng, cfg.blockage_probability, K, L);

    const DetectorGeometry detector = DetectorGeometry::uniform_ring(
        std::size_t(cfg.num_photodiodes), cfg.pd_elevation, cfg.receiver_area, cfg.pd_area, cfg.pd_gain, cfg.fov);
    const double ap_power = double(cfg.array_side * cfg.array_side) * cfg.beam_power();

    std::vector<double> sigma2(K), aggregate(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        d.channels.push_back(build_channel_matrix(d.users[k], d.aps, cfg.beam, detector, d.blockage.row(k)));
        const Eigen::MatrixXd &H = d.channels.back().gains;
        const double best = H.rowwise().sum().maxCoeff();
        sigma2[k] = noise_variance(cfg.front_end, cfg.noise, ap_power * best);
        aggregate[k] = ap_power * H.sum();
    }
    if (cfg.snr_db)
    {
        const double shift_db = median_snr_db(cfg, sigma2) - *cfg.snr_db;
        const double factor = std::pow(10.0, shift_db / 10.0);
        for (double &s : sigma2)
            s *= factor;
    }

    if (cfg.classification == ClassificationKind::distance_threshold)
    {
        d.classes = classify_users(d.users, d.aps, DistanceThreshold{cfg.distance_threshold}, aggregate);
        if (d.classes.empty_class_warning)
        {
            d.classification_fallback = true;
            d.classes = classify_users(d.users, d.aps, MedianSplit{}, aggregate);
        }
    }
    else
        d.classes = classify_users(d.users, d.aps, MedianSplit{}, aggregate);
    for (int id : d.classes.weak)
        d.users[std::size_t(id)].user_class = UserClass::weak;
    for (int id : d.classes.strong)
        d.users[std::size_t(id)].user_class = UserClass::strong;

    SchemeInputs &in = d.inputs;
    in.groups = group_users(d.users, d.classes, d.weights);
    in.order.resize(in.groups.pairs.size());
    for (std::size_t g = 0; g < in.order.size(); ++g)
        in.order[g] = int(g);
    shuffle(in.order, rng);
    for (std::size_t k = 0; k < K; ++k)
        in.users.push_back({int(k), d.channels[k].gains, sigma2[k]});
    in.L = int(L);
    in.levels = discretize(cfg.p_max(), cfg.levels);
    in.qos = cfg.qos;
    in.solver = cfg.solver;
    in.front_end = cfg.front_end;
    in.beta_w = cfg.beta_w;
    in.beta_s = cfg.beta_s;
    return d;
}

std::vector<MetricsRecord> run_drop(const ScenarioConfig &cfg, std::span<const SchemeId> schemes, std::uint64_t index)
{
    const Drop d = build_drop(cfg, index);
    int rank_deficient = 0;
    for (const auto &ch : d.channels)
        rank_deficient += ch.rank_deficient ? 1 : 0;
    std::vector<MetricsRecord> out;
    for (SchemeId s : schemes)
    {
        MetricsRecord m = make_record(run_scheme(s, d.inputs), cfg.front_end.bandwidth, index, d.seed);
        m.rank_deficient_users = rank_deficient;
        out.push_back(m);
    }
    return out;
}

MetricsRecord run_drop(const ScenarioConfig &cfg, SchemeId scheme, std::uint64_t index)
{
    const SchemeId one[] = {scheme};
    return run_drop(cfg, one, index).front();
}

std::vector<std::vector<MetricsRecord>> run_drops(const ScenarioConfig &cfg, std::span<const SchemeId> schemes)
{
    const std::size_t n = std::size_t(cfg.drops);
    std::vector<std::vector<MetricsRecord>> out(n);
    std::size_t workers = cfg.threads > 0 ? std::size_t(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]
    {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                out[i] = run_drop(cfg, schemes, i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    if (workers <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

const char *to_string(SweepAxis a)
{
    switch (a)
    {
    case SweepAxis::num_users:
        return "users";
    case SweepAxis::blockage:
        return "blockage";
    case SweepAxis::snr:
        return "snr";
    case SweepAxis::beam_waist:
        return "beam_waist";
    case SweepAxis::tx_power:
        return "tx_power";
    }
    return "unknown";
}

SweepAxis parse_axis(std::string_view name)
{
    for (SweepAxis a : {SweepAxis::num_users, SweepAxis::blockage, SweepAxis::snr, SweepAxis::beam_waist,
                        SweepAxis::tx_power})
        if (name == to_string(a))
            return a;
    if (name == "num_users")
        return SweepAxis::num_users;
    throw ConfigError("Unknown sweep axis '" + std::string(name) + "'.");
}

ScenarioConfig apply_axis(const ScenarioConfig &cfg, SweepAxis axis, double value)
{
    ScenarioConfig c = cfg;
    switch (axis)
    {
    case SweepAxis::num_users:
        if (value < 1.0 || value != std::floor(value))
            throw ConfigError("The users axis takes positive integer values.");
        c.num_users = int(value);
        break;
    case SweepAxis::blockage:
        c.blockage_probability = value;
        break;
    case SweepAxis::snr:
        c.snr_db = value;
        break;
    case SweepAxis::beam_waist:
        c.beam.w0 = value * 1e-6;
        break;
    case SweepAxis::tx_power:
        c.beam_power_cap = value * 1e-3;
        break;
    }
    c.validate();
    return c;
}

double SweepPoint::mean_rate_bps() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return r.sum_rate_bps; });
}

double SweepPoint::stderr_rate_bps() const
{
    std::vector<double> v;
    for (const auto &r : drops)
        v.push_back(r.sum_rate_bps);
    return stats::standard_error(v);
}

double SweepPoint::mean_rate_bpshz() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return r.sum_rate_bpshz; });
}

double SweepPoint::mean_jain() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return r.jain; });
}

double SweepPoint::mean_ee() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return r.energy_eff; });
}

double SweepPoint::mean_groups_served() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return double(r.groups_served); });
}

double SweepPoint::mean_t_star() const
{
    return mean_of(drops, [](const MetricsRecord &r) { return double(r.t_star); });
}

const SweepPoint &SweepResult::at(std::size_t value_index, SchemeId scheme) const
{
    for (std::size_t s = 0; s < schemes.size(); ++s)
        if (schemes[s] == scheme)
            return points[value_index * schemes.size() + s];
    throw std::out_of_range("Scheme not part of this sweep.");
}

SweepResult sweep(const ScenarioConfig &cfg, SweepAxis axis, std::span<const double> values,
                  std::span<const SchemeId> schemes, const ProgressFn &progress)
{
    if (values.empty() || schemes.empty())
        throw ConfigError("A sweep needs at least one value and one scheme.");
    SweepResult res;
    res.axis = axis;
    res.values.assign(values.begin(), values.end());
    res.schemes.assign(schemes.begin(), schemes.end());
    for (std::size_t v = 0; v < values.size(); ++v)
    {
        const ScenarioConfig c = apply_axis(cfg, axis, values[v]);
        const auto records = run_drops(c, schemes);
        for (std::size_t s = 0; s < schemes.size(); ++s)
        {
            SweepPoint p;
            p.value = values[v];
            p.scheme = schemes[s];
            for (const auto &drop : records)
                p.drops.push_back(drop[s]);
            res.points.push_back(std::move(p));
        }
        if (progress)
            progress(v + 1, values.size());
    }
    return res;
}

void write_sweep_csv(std::ostream &os, const SweepResult &result)
{
    os << "axis,value,scheme,mean_rate_bps,stderr_rate_bps,mean_rate_bpshz,jain,ee_bits_per_joule,groups,t_star\n";
    for (const auto &p : result.points)
        os << to_string(result.axis) << ',' << fmt(p.value) << ',' << to_string(p.scheme) << ','
           << fmt(p.mean_rate_bps()) << ',' << fmt(p.stderr_rate_bps()) << ',' << fmt(p.mean_rate_bpshz()) << ','
           << fmt(p.mean_jain()) << ',' << fmt(p.mean_ee()) << ',' << fmt(p.mean_groups_served()) << ','
           << fmt(p.mean_t_star()) << '\n';
}

void write_records_csv(std::ostream &os, std::span<const MetricsRecord> records)
{
    os << "drop,seed,scheme,sum_rate_bpshz,sum_rate_bps,jain,jain_undefined,ee_bits_per_joule,consumed_power_w,"
          "groups,groups_served,t_star,infeasible,rank_deficient_users\n";
    for (const auto &r : records)
        os << r.drop_index << ',' << r.drop_seed << ',' << to_string(r.scheme) << ',' << fmt(r.sum_rate_bpshz) << ','
           << fmt(r.sum_rate_bps) << ',' << fmt(r.jain) << ',' << (r.jain_undefined ? 1 : 0) << ','
           << fmt(r.energy_eff) << ',' << fmt(r.consumed_power) << ',' << r.groups << ',' << r.groups_served << ','
           << r.t_star << ',' << (r.infeasible ? 1 : 0) << ',' << r.rank_deficient_users << '\n';
}

} // namespace owcnoma
