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
#include "owcnoma/stats.hpp"

#include "owcnoma/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace owcnoma::stats
{

namespace
{
// Linear interpolation between order statistics.
double quantile(std::vector<double> v, double q)
{
    std::sort(v.begin(), v.end());
    const double pos = q * double(v.size() - 1);
    const std::size_t i = std::size_t(std::floor(pos));
    const double frac = pos - double(i);
    if (i + 1 >= v.size())
        return v.back();
    return v[i] + frac * (v[i + 1] - v[i]);
}

void check_bootstrap_args(int resamples, double confidence)
{
    if (resamples < 2)
        throw std::invalid_argument("Bootstrap needs at least two resamples.");
    if (!(confidence > 0.5 && confidence < 1.0))
        throw std::invalid_argument("Confidence must lie in (0.5, 1).");
}
} // namespace

double mean(std::span<const double> v)
{
    if (v.empty())
        throw std::invalid_argument("Mean of an empty sample.");
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double standard_error(std::span<const double> v)
{
    if (v.size() < 2)
        return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
}

double ols_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("Slope needs at least two paired points.");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("Slope is undefined for constant x.");
    return sxy / sxx;
}

Interval bootstrap_mean(std::span<const double> samples, int resamples, std::uint64_t seed, double confidence)
{
    check_bootstrap_args(resamples, confidence);
    Interval out;
    out.estimate = mean(samples);
    Rng rng(seed);
    std::vector<double> draws(static_cast<std::size_t>(resamples));
    for (auto &s : draws)
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            acc += samples[uniform_index(rng, samples.size())];
        s = acc / double(samples.size());
    }
    out.lower = quantile(draws, 1.0 - confidence);
    out.upper = quantile(draws, confidence);
    return out;
}

Interval bootstrap_slope(std::span<const double> x, const std::vector<std::vector<double>> &samples, int resamples,
                         std::uint64_t seed, double confidence)
{
    check_bootstrap_args(resamples, confidence);
    if (samples.size() != x.size() || samples.empty())
        throw std::invalid_argument("One sample vector per x value is required.");
    const std::size_t n = samples.front().size();
    for (const auto &s : samples)
        if (s.size() != n || n == 0)
            throw std::invalid_argument("Every point needs the same nonzero number of drops.");

    std::vector<double> means(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        means[i] = mean(samples[i]);
    Interval out;
    out.estimate = ols_slope(x, means);

    Rng rng(seed);
    std::vector<std::size_t> pick(n);
    std::vector<double> draws(static_cast<std::size_t>(resamples));
    for (auto &s : draws)
    {
        for (auto &p : pick)
            p = std::size_t(uniform_index(rng, n));
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            double acc = 0.0;
            for (std::size_t p : pick)
                acc += samples[i][p];
            means[i] = acc / double(n);
        }
        s = ols_slope(x, means);
    }
    out.lower = quantile(draws, 1.0 - confidence);
    out.upper = quantile(draws, confidence);
    return out;
}

double linear_fit_r2(const std::vector<std::vector<double>> &features, std::span<const double> y)
{
    const Eigen::Index n = Eigen::Index(y.size());
    const Eigen::Index k = Eigen::Index(features.size());
    if (n < k + 2)
        throw std::invalid_argument("Not enough observations for the regression.");
    Eigen::MatrixXd X(n, k + 1);
    Eigen::VectorXd Y(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 0; j < k; ++j)
        {
            if (features[std::size_t(j)].size() != y.size())
                throw std::invalid_argument("Feature length does not match the response.");
            X(i, j + 1) = features[std::size_t(j)][std::size_t(i)];
        }
        Y(i) = y[std::size_t(i)];
    }
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(Y);
    const Eigen::VectorXd resid = Y - X * beta;
    const double ss_res = resid.squaredNorm();
    const double ss_tot = (Y.array() - Y.mean()).square().sum();
    return ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

} // namespace owcnoma::stats
