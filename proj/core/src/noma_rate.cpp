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
#include "owcnoma/noma_rate.hpp"

#include "owcnoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace owcnoma
{

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

double kappa_of(const OpticalFrontEnd &fe)
{
    const double rf = fe.conversion_factor * fe.responsivity;
    return entropy_gap * rf * rf;
}

// Smallest x in [lo, hi] with f(x) >= target for nondecreasing f.
template <typename F>
double invert_monotone(F &&f, double target, double lo, double hi)
{
    if (f(lo) >= target)
        return lo;
    if (f(hi) < target)
        return inf;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= target ? hi : lo) = mid;
    }
    return hi;
}
} // namespace

SinrPair sinr(const PowerPair &pair, const OpticalFrontEnd &front_end, double sigma2)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("Noise variance must be positive.");
    const double k = kappa_of(front_end);
    return {k * pair.p_w / (k * pair.p_s + sigma2), k * pair.p_s / sigma2};
}

NoiseCovariance noise_covariance(int G, int L, double sigma2)
{
    if (G < 1 || L < 1)
        throw std::invalid_argument("noise_covariance needs G >= 1 and L >= 1.");
    NoiseCovariance rz;
    rz.diag = Eigen::VectorXd::Constant(L, sigma2);
    rz.diag(0) = double(G) * sigma2;
    return rz;
}

double user_rate(const Eigen::MatrixXd &H, double gamma, const NoiseCovariance &Rz, bia::Rational b)
{
    if (H.rows() != Rz.size())
        throw std::invalid_argument("Channel rows must match the noise covariance size.");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("SINR must be nonnegative.");
    if (!(Rz.diag.array() > 0.0).all() || !Rz.diag.allFinite())
        throw NumericError("Noise covariance is not positive definite.");
    if (gamma == 0.0)
        return 0.0;

    const Eigen::VectorXd s = Rz.diag.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd SH = s.asDiagonal() * H;
    Eigen::MatrixXd A = gamma * SH * SH.transpose();
    A.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericError("Cholesky factorisation of I + gamma S H H^T S failed.");
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return b.value() * std::max(0.0, log_det) / std::numbers::ln2;
}

ReferredChannel refer_channel(const Eigen::MatrixXd &H, double sigma2)
{
    ReferredChannel rc;
    rc.norm = H.norm();
    if (rc.norm > 0.0)
    {
        rc.unit = H / rc.norm;
        rc.sigma2_eff = sigma2 / (rc.norm * rc.norm);
    }
    else
    {
        rc.unit = Eigen::MatrixXd::Zero(H.rows(), H.cols());
        rc.sigma2_eff = inf;
    }
    return rc;
}

RateResult group_sum_rate(const PowerPair &pair, const OpticalFrontEnd &front_end, const Eigen::MatrixXd &H_weak,
                          const Eigen::MatrixXd &H_strong, int G, int L, double sigma2_w, double sigma2_s)
{
    RateResult r;
    r.b = bia::alignment_ratio(L, G);
    const NoiseCovariance rz = noise_covariance(G, L, 1.0);
    const ReferredChannel w = refer_channel(H_weak, sigma2_w);
    const ReferredChannel s = refer_channel(H_strong, sigma2_s);
    if (w.norm > 0.0)
    {
        r.sinr_weak = sinr(pair, front_end, w.sigma2_eff).weak;
        r.rate_weak = user_rate(w.unit, r.sinr_weak, rz, r.b);
    }
    if (s.norm > 0.0)
    {
        r.sinr_strong = sinr(pair, front_end, s.sigma2_eff).strong;
        r.rate_strong = user_rate(s.unit, r.sinr_strong, rz, r.b);
    }
    return r;
}

UserLink UserLink::from_channel(const Eigen::MatrixXd &H, const NoiseCovariance &Rz_unit, double sigma2)
{
    if (H.rows() != Rz_unit.size())
        throw std::invalid_argument("Channel rows must match the noise covariance size.");
    UserLink link;
    const ReferredChannel rc = refer_channel(H, sigma2);
    link.sigma2_eff = rc.sigma2_eff;
    if (!(rc.norm > 0.0))
    {
        link.eigen = Eigen::VectorXd(0);
        return link;
    }
    const Eigen::VectorXd s = Rz_unit.diag.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd SU = s.asDiagonal() * rc.unit;
    const Eigen::MatrixXd A = SU * SU.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("Eigen-decomposition of the referred channel failed.");
    const Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 1e-14 * std::max(1.0, ev.maxCoeff());
    std::vector<double> kept;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > floor)
            kept.push_back(ev(k));
    link.eigen = Eigen::Map<const Eigen::VectorXd>(kept.data(), Eigen::Index(kept.size()));
    return link;
}

UserLink UserLink::virtual_link()
{
    UserLink link;
    link.eigen = Eigen::VectorXd(0);
    link.sigma2_eff = inf;
    link.virtual_user = true;
    return link;
}

PairRateModel::PairRateModel(UserLink weak, UserLink strong, double prelog, const OpticalFrontEnd &front_end)
    : weak_(std::move(weak)), strong_(std::move(strong)), prelog_(prelog), kappa_(kappa_of(front_end))
{
    if (!(prelog > 0.0))
        throw std::invalid_argument("Prelog must be positive.");
}

double PairRateModel::log_det_sum(const Eigen::VectorXd &eig, double gamma)
{
    double acc = 0.0;
    for (Eigen::Index k = 0; k < eig.size(); ++k)
        acc += std::log1p(gamma * eig(k));
    return acc / std::numbers::ln2;
}

double PairRateModel::gamma_weak(double p_w, double p_s) const
{
    if (weak_.silent())
        return 0.0;
    return kappa_ * p_w / (kappa_ * p_s + weak_.sigma2_eff);
}

double PairRateModel::gamma_strong(double p_s) const
{
    if (strong_.silent())
        return 0.0;
    return kappa_ * p_s / strong_.sigma2_eff;
}

double PairRateModel::weak_rate(double p_w, double p_s) const
{
    ++evaluations_;
    return prelog_ * log_det_sum(weak_.eigen, gamma_weak(p_w, p_s));
}

double PairRateModel::strong_rate(double p_s) const
{
    ++evaluations_;
    return prelog_ * log_det_sum(strong_.eigen, gamma_strong(p_s));
}

double PairRateModel::weak_rate_derivative(double p_w, double p_s) const
{
    if (weak_.silent())
        return 0.0;
    ++evaluations_;
    const double slope = kappa_ / (kappa_ * p_s + weak_.sigma2_eff);
    const double g = slope * p_w;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < weak_.eigen.size(); ++k)
        acc += weak_.eigen(k) * slope / (1.0 + g * weak_.eigen(k));
    return prelog_ * acc / std::numbers::ln2;
}

double PairRateModel::weak_rate_second_derivative(double p_w, double p_s) const
{
    if (weak_.silent())
        return 0.0;
    ++evaluations_;
    const double slope = kappa_ / (kappa_ * p_s + weak_.sigma2_eff);
    const double g = slope * p_w;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < weak_.eigen.size(); ++k)
    {
        const double q = weak_.eigen(k) * slope / (1.0 + g * weak_.eigen(k));
        acc -= q * q;
    }
    return prelog_ * acc / std::numbers::ln2;
}

double PairRateModel::strong_power_for(double target, double p_hi) const
{
    return invert_monotone([&](double p) { return strong_rate(p); }, target, 0.0, p_hi);
}

double PairRateModel::weak_power_for(double target, double p_s, double p_lo, double p_hi) const
{
    return invert_monotone([&](double p) { return weak_rate(p, p_s); }, target, p_lo, p_hi);
}

} // namespace owcnoma
