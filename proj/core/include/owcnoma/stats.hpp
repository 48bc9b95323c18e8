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
#ifndef OWCNOMA_STATS_HPP
#define OWCNOMA_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace owcnoma::stats
{

double mean(std::span<const double> v);
// Standard error of the mean (sample standard deviation / sqrt(n)); 0 for n < 2.
double standard_error(std::span<const double> v);

// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

struct Interval
{
    double estimate = 0.0;
    double lower = 0.0; // one-sided lower bound at the requested confidence
    double upper = 0.0; // one-sided upper bound at the requested confidence
};

// Percentile bootstrap of the mean.
Interval bootstrap_mean(std::span<const double> samples, int resamples, std::uint64_t seed, double confidence = 0.95);

// Bootstrap of the OLS slope of per-point means against x. samples[i][d] is the value of
// drop d at point x[i]; drops are resampled jointly across points because every point reuses
// the same drop seeds.
Interval bootstrap_slope(std::span<const double> x, const std::vector<std::vector<double>> &samples, int resamples,
                         std::uint64_t seed, double confidence = 0.95);

// Least-squares fit y = a + sum_k b_k x_k; returns R^2.
double linear_fit_r2(const std::vector<std::vector<double>> &features, std::span<const double> y);

} // namespace owcnoma::stats

#endif
