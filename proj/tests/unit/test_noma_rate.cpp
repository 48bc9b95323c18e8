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
#include "owcnoma/errors.hpp"
#include "owcnoma/noma_rate.hpp"
#include "owcnoma/oracles.hpp"
#include "owcnoma/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace owcnoma;

namespace
{
OpticalFrontEnd unit_front_end()
{
    OpticalFrontEnd fe;
    fe.responsivity = 1.0;
    fe.conversion_factor = 1.0;
    return fe;
}

Eigen::MatrixXd random_matrix(Rng &rng, int n, double lo = 0.0, double hi = 1.0)
{
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            H(i, j) = uniform(rng, lo, hi);
    return H;
}
} // namespace

TEST(NomaRate, EntropyGap)
{
    EXPECT_NEAR(entropy_gap, 0.05854983152431916, 1e-17);
}

TEST(NomaRate, SinrArithmetic)
{
    const auto s = sinr({10.0, 1.0}, unit_front_end(), 1.0);
    EXPECT_NEAR(s.weak, 0.5531136067539399, 1e-15);
    EXPECT_NEAR(s.strong, 0.05854983152431916, 1e-16);
    EXPECT_EQ(sinr({0.0, 1.0}, unit_front_end(), 1.0).weak, 0.0);
    EXPECT_NEAR(sinr({2.0, 0.0}, unit_front_end(), 0.5).weak, entropy_gap * 2.0 / 0.5, 1e-15);
    EXPECT_THROW(sinr({1.0, 1.0}, unit_front_end(), 0.0), std::invalid_argument);
}

TEST(NomaRate, NoiseCovariance)
{
    const auto a = noise_covariance(1, 4, 2.0);
    EXPECT_TRUE(a.dense().isApprox(2.0 * Eigen::MatrixXd::Identity(4, 4)));
    const auto b = noise_covariance(3, 2, 1.5);
    EXPECT_DOUBLE_EQ(b.diag(0), 4.5);
    EXPECT_DOUBLE_EQ(b.diag(1), 1.5);
    const auto c = noise_covariance(5, 4, 0.7);
    EXPECT_NEAR(c.determinant(), 5 * std::pow(0.7, 4), 1e-14);
}

TEST(NomaRate, SubtractionNoiseMonteCarlo)
{
    // The first slot of an alignment block holds y = x_own + sum_{G-1} x_other + n_0, and
    // each of the G-1 interference terms is estimated from its own slot with independent noise.
    // After subtraction the residual noise variance is G sigma^2.
    Rng rng(3);
    const int G = 3;
    const double sigma = 0.8;
    const int n = 200000;
    auto gauss = [&]
    {
        const double u1 = uniform01(rng), u2 = uniform01(rng);
        return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2 * M_PI * u2);
    };
    double s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double residual = sigma * gauss();
        for (int j = 0; j < G - 1; ++j)
            residual -= sigma * gauss();
        s2 += residual * residual;
    }
    s2 /= n;
    EXPECT_NEAR(s2 / (sigma * sigma), double(G), 0.03);
}

TEST(NomaRate, UserRateBasics)
{
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    EXPECT_EQ(user_rate(I, 0.0, noise_covariance(1, 4, 1.0), {1, 1}), 0.0);
    EXPECT_NEAR(user_rate(I, 1.0, noise_covariance(1, 4, 1.0), {1, 1}), 4.0, 1e-14);
    EXPECT_THROW(user_rate(I, -1.0, noise_covariance(1, 4, 1.0), {1, 1}), std::invalid_argument);
    EXPECT_THROW(user_rate(I, 1.0, noise_covariance(1, 3, 1.0), {1, 1}), std::invalid_argument);
    NoiseCovariance bad = noise_covariance(1, 4, 1.0);
    bad.diag(2) = 0.0;
    EXPECT_THROW(user_rate(I, 1.0, bad, {1, 1}), NumericError);
}

TEST(NomaRate, UserRateMatchesEigenAndCofactorOracles)
{
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Eigen::MatrixXd H = random_matrix(rng, 3);
        const NoiseCovariance rz = noise_covariance(2, 3, 1.0);
        const double r = user_rate(H, 0.7, rz, {1, 1});

        Eigen::MatrixXd A = 0.7 * H * H.transpose() * rz.dense().inverse();
        const Eigen::VectorXcd ev = A.eigenvalues();
        double ref = 0.0;
        for (Eigen::Index k = 0; k < ev.size(); ++k)
            ref += std::log2(1.0 + ev(k).real());
        EXPECT_NEAR(r, ref, 1e-10);
        A += Eigen::MatrixXd::Identity(3, 3);
        EXPECT_NEAR(r, std::log2(oracle::cofactor_determinant(A)), 1e-10);
    }
}

TEST(NomaRate, UserRateProperties)
{
    Rng rng(5);
    const Eigen::MatrixXd H = random_matrix(rng, 4);
    const NoiseCovariance rz = noise_covariance(3, 4, 1.0);
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i)
    {
        const double r = user_rate(H, 0.1 * i, rz, {1, 5});
        EXPECT_GE(r, prev);
        prev = r;
    }
    EXPECT_NEAR(user_rate(H, 2.0, rz, {2, 5}), 2.0 * user_rate(H, 2.0, rz, {1, 5}), 1e-13);

    // Zeroing a photodiode row never helps
    Eigen::MatrixXd B = H;
    B.row(2).setZero();
    EXPECT_LE(user_rate(B, 2.0, rz, {1, 1}), user_rate(H, 2.0, rz, {1, 1}) + 1e-14);
    // Rank-deficient channels are fine
    EXPECT_GT(user_rate(B, 2.0, rz, {1, 1}), 0.0);
}

TEST(NomaRate, GroupSumRateScalarReduction)
{
    // L = 2, G = 2 and H = I: U = I/sqrt(2) and S = diag(1/sqrt(2), 1), so the eigenvalues of
    // S U U^T S are 1/4 and 1/2 and sigma2_eff = sigma2/2.
    const OpticalFrontEnd fe = unit_front_end();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    const auto r = group_sum_rate({10.0, 1.0}, fe, I, I, 2, 2, 1.0, 1.0);
    const double c = entropy_gap;
    const double gw = 10 * c / (c + 0.5), gs = c / 0.5;
    const double ref_w = (std::log2(1 + gw / 4) + std::log2(1 + gw / 2)) / 3;
    const double ref_s = (std::log2(1 + gs / 4) + std::log2(1 + gs / 2)) / 3;
    EXPECT_EQ(r.b, (bia::Rational{1, 3}));
    EXPECT_NEAR(r.rate_weak, ref_w, 1e-14);
    EXPECT_NEAR(r.rate_strong, ref_s, 1e-14);
    EXPECT_NEAR(r.sum(), ref_w + ref_s, 1e-14);
    EXPECT_EQ(group_sum_rate({0.0, 0.0}, fe, I, I, 2, 2, 1.0, 1.0).sum(), 0.0);
}

TEST(NomaRate, GroupSumRateMatchesDirectOracle)
{
    Rng rng(8);
    const OpticalFrontEnd fe;
    for (int trial = 0; trial < 30; ++trial)
    {
        const int L = 2 + int(uniform_index(rng, 4));
        const int G = 1 + int(uniform_index(rng, 4));
        const Eigen::MatrixXd Hw = random_matrix(rng, L, 0.0, 1e-4), Hs = random_matrix(rng, L, 0.0, 1e-4);
        const double s2w = uniform(rng, 1e-13, 1e-11), s2s = uniform(rng, 1e-13, 1e-11);
        const double pw = uniform(rng, 0.05, 1.0), ps = uniform(rng, 0.0, 0.05);
        const auto r = group_sum_rate({pw, ps}, fe, Hw, Hs, G, L, s2w, s2s);
        const double b = bia::alignment_ratio(L, G).value();
        EXPECT_NEAR(r.rate_weak, oracle::direct_rate(Hw, s2w, pw, ps, G, b, fe), 1e-9 * (1 + r.rate_weak));
        EXPECT_NEAR(r.rate_strong, oracle::direct_rate(Hs, s2s, ps, 0.0, G, b, fe), 1e-9 * (1 + r.rate_strong));
    }
}

TEST(NomaRate, PairModelMatchesGroupSumRate)
{
    Rng rng(13);
    const OpticalFrontEnd fe;
    const int L = 4, G = 3;
    const Eigen::MatrixXd Hw = random_matrix(rng, L, 0.0, 1e-4), Hs = random_matrix(rng, L, 0.0, 1e-4);
    const NoiseCovariance rz = noise_covariance(G, L, 1.0);
    const PairRateModel m(UserLink::from_channel(Hw, rz, 2e-12), UserLink::from_channel(Hs, rz, 3e-12),
                          bia::alignment_ratio(L, G).value(), fe);
    for (double pw : {0.02, 0.2, 0.9})
        for (double ps : {0.0, 0.01, 0.02})
        {
            const auto r = group_sum_rate({pw, ps}, fe, Hw, Hs, G, L, 2e-12, 3e-12);
            EXPECT_NEAR(m.weak_rate(pw, ps), r.rate_weak, 1e-10 * (1 + r.rate_weak));
            EXPECT_NEAR(m.strong_rate(ps), r.rate_strong, 1e-10 * (1 + r.rate_strong));
        }
    // Weak rate falls as interference grows
    EXPECT_GT(m.weak_rate(0.5, 0.0), m.weak_rate(0.5, 0.05));
}

TEST(NomaRate, PairModelDerivatives)
{
    Rng rng(17);
    const OpticalFrontEnd fe;
    const Eigen::MatrixXd Hw = random_matrix(rng, 3, 0.0, 1e-4);
    const NoiseCovariance rz = noise_covariance(2, 3, 1.0);
    const PairRateModel m(UserLink::from_channel(Hw, rz, 1e-12), UserLink::virtual_link(), 0.25, fe);
    const double h = 1e-6;
    for (double p : {0.05, 0.3, 0.8})
    {
        const double fd = (m.weak_rate(p + h, 0.01) - m.weak_rate(p - h, 0.01)) / (2 * h);
        EXPECT_NEAR(m.weak_rate_derivative(p, 0.01), fd, 1e-6 * std::abs(fd) + 1e-9);
        const double fd2 = (m.weak_rate_derivative(p + h, 0.01) - m.weak_rate_derivative(p - h, 0.01)) / (2 * h);
        EXPECT_NEAR(m.weak_rate_second_derivative(p, 0.01), fd2, 1e-5 * std::abs(fd2) + 1e-9);
        EXPECT_LT(m.weak_rate_second_derivative(p, 0.01), 0.0);
    }
}

TEST(NomaRate, PairModelInversionAndCounters)
{
    Rng rng(19);
    const OpticalFrontEnd fe;
    const NoiseCovariance rz = noise_covariance(2, 3, 1.0);
    const PairRateModel m(UserLink::from_channel(random_matrix(rng, 3, 0.0, 1e-4), rz, 1e-12),
                          UserLink::from_channel(random_matrix(rng, 3, 0.0, 1e-4), rz, 1e-12), 0.25, fe);
    m.reset_evaluations();
    const double target = m.strong_rate(0.013);
    const double p = m.strong_power_for(target, 0.05);
    EXPECT_NEAR(p, 0.013, 1e-9);
    EXPECT_TRUE(std::isinf(m.strong_power_for(1e3, 0.05)));
    const double pw = m.weak_power_for(m.weak_rate(0.4, 0.01), 0.01, 0.02, 1.0);
    EXPECT_NEAR(pw, 0.4, 1e-9);
    EXPECT_GT(m.evaluations(), 10u);
    m.reset_evaluations();
    EXPECT_EQ(m.evaluations(), 0u);
}

TEST(NomaRate, VirtualAndSilentLinks)
{
    const auto v = UserLink::virtual_link();
    EXPECT_TRUE(v.virtual_user);
    EXPECT_TRUE(v.silent());
    const auto z = UserLink::from_channel(Eigen::MatrixXd::Zero(3, 3), noise_covariance(1, 3, 1.0), 1e-12);
    EXPECT_TRUE(z.silent());
    EXPECT_FALSE(z.virtual_user);
    const PairRateModel m(z, v, 0.5, OpticalFrontEnd{});
    EXPECT_EQ(m.weak_rate(1.0, 0.0), 0.0);
    EXPECT_EQ(m.strong_rate(1.0), 0.0);
}
