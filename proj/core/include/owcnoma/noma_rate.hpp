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
#ifndef OWCNOMA_NOMA_RATE_HPP
#define OWCNOMA_NOMA_RATE_HPP

#include "owcnoma/bia.hpp"
#include "owcnoma/channel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <numbers>

namespace owcnoma
{

// c = 1/(2 pi e): the entropy-power gap of a real, amplitude-constrained optical input.
inline constexpr double entropy_gap = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);

struct PowerPair
{
    double p_w = 0.0; // weak user [W]
    double p_s = 0.0; // strong user [W]
};

struct SinrPair
{
    double weak = 0.0;
    double strong = 0.0;
};

// gamma_w = c rho^2 f^2 p_w / (c rho^2 f^2 p_s + sigma2), gamma_s = c rho^2 f^2 p_s / sigma2.
SinrPair sinr(const PowerPair &pair, const OpticalFrontEnd &front_end, double sigma2);

// Diagonal, stored as its diagonal.
struct NoiseCovariance
{
    Eigen::VectorXd diag;

    Eigen::Index size() const { return diag.size(); }
    Eigen::MatrixXd dense() const { return diag.asDiagonal(); }
    double determinant() const { return diag.prod(); }
};

// diag(G, 1, ..., 1) * sigma2 of size L. The first slot of every alignment block carries the
// G-1 interference estimates that were subtracted, each with its own noise.
NoiseCovariance noise_covariance(int G, int L, double sigma2);

// b log2 det(I + gamma H H^T Rz^{-1}).
//
// Evaluated as a Cholesky log-determinant of the symmetric form I + gamma S H H^T S with
// S = Rz^{-1/2}. Rank-deficient H is fine. Throws NumericError if Rz is not positive definite
// and std::invalid_argument for mismatched sizes or negative gamma.
double user_rate(const Eigen::MatrixXd &H, double gamma, const NoiseCovariance &Rz, bia::Rational b);

// Channel normalised to unit Frobenius norm with the receiver noise referred through the same
// factor: H = norm * unit, sigma2_eff = sigma2 / norm^2. The NOMA SINRs computed with
// sigma2_eff then weigh noise against the power actually collected by the detector.
struct ReferredChannel
{
    Eigen::MatrixXd unit;
    double norm = 0.0;
    double sigma2_eff = 0.0; // +inf when the channel is identically zero
};

ReferredChannel refer_channel(const Eigen::MatrixXd &H, double sigma2);

struct RateResult
{
    double rate_weak = 0.0;   // bits/s/Hz
    double rate_strong = 0.0; // bits/s/Hz
    bia::Rational b{1, 1};
    double sinr_weak = 0.0;
    double sinr_strong = 0.0;

    double sum() const { return rate_weak + rate_strong; }
};

// R_g = R_w(p_w, p_s) + R_s(p_s) with prelog 1/(L+G-1) on both users.
//
// H_weak and H_strong are raw optical gain matrices; they are referred internally (see
// refer_channel) and the log-det uses the unit-variance covariance diag(G, 1, ..., 1).
RateResult group_sum_rate(const PowerPair &pair, const OpticalFrontEnd &front_end, const Eigen::MatrixXd &H_weak,
                          const Eigen::MatrixXd &H_strong, int G, int L, double sigma2_w, double sigma2_s);

// Spectral form of one user's log-det rate: with the eigenvalues e_k of S U U^T S (U the unit
// channel, S = Rz^{-1/2}), log2 det(I + gamma U U^T Rz^{-1}) = sum_k log2(1 + gamma e_k).
// Cheap to evaluate and differentiate inside the power solver.
struct UserLink
{
    Eigen::VectorXd eigen; // positive eigenvalues only; numerically null modes are dropped
    double sigma2_eff = 0.0;
    bool virtual_user = false; // padding user with no channel and no rate requirements

    static UserLink from_channel(const Eigen::MatrixXd &H, const NoiseCovariance &Rz_unit, double sigma2);
    static UserLink virtual_link();

    bool silent() const { return virtual_user || !(sigma2_eff < std::numeric_limits<double>::infinity()); }
};

// Rates of one weak/strong pair as functions of the two powers. Counts every rate evaluation
// so that solver work can be measured; a model instance is not meant to be shared across threads.
class PairRateModel
{
public:
    PairRateModel(UserLink weak, UserLink strong, double prelog, const OpticalFrontEnd &front_end);

    double gamma_weak(double p_w, double p_s) const;
    double gamma_strong(double p_s) const;

    double weak_rate(double p_w, double p_s) const;
    double strong_rate(double p_s) const;
    // d R_w / d p_w
    double weak_rate_derivative(double p_w, double p_s) const;
    double weak_rate_second_derivative(double p_w, double p_s) const;

    // Smallest p_s with strong_rate(p_s) >= target (bisection), +inf if unreachable.
    double strong_power_for(double target, double p_hi) const;
    // Smallest p_w in [p_lo, p_hi] with weak_rate(p_w, p_s) >= target, +inf if unreachable.
    double weak_power_for(double target, double p_s, double p_lo, double p_hi) const;

    const UserLink &weak() const { return weak_; }
    const UserLink &strong() const { return strong_; }
    double prelog() const { return prelog_; }

    std::uint64_t evaluations() const { return evaluations_; }
    void reset_evaluations() const { evaluations_ = 0; }

private:
    static double log_det_sum(const Eigen::VectorXd &eig, double gamma);

    UserLink weak_, strong_;
    double prelog_;
    double kappa_; // c rho^2 f^2
    mutable std::uint64_t evaluations_ = 0;
};

} // namespace owcnoma

#endif
