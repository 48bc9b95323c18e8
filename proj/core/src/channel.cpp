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
#include "owcnoma/channel.hpp"

#include "owcnoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace owcnoma
{

double BeamParams::divergence() const
{
    return theta_fwhm / std::sqrt(2.0 * std::numbers::ln2);
}

void BeamParams::validate() const
{
    if (!(w0 > 0.0))
        throw ConfigError("Beam waist must be positive.");
    if (!(wavelength > 0.0))
        throw ConfigError("Wavelength must be positive.");
    if (!(refractive_index >= 1.0))
        throw ConfigError("Refractive index must be >= 1.");
    if (!(theta_fwhm > 0.0))
        throw ConfigError("Full-width half-maximum angle must be positive.");
}

void EyeSafetyParams::validate() const
{
    if (!(cornea_diameter > 0.0) || !(exposure_limit > 0.0) || !(hazard_distance > 0.0))
        throw ConfigError("Eye-safety distances and exposure limit must be positive.");
    if (!(current_low > 0.0) || !(current_low < dc_bias) || !(dc_bias < current_high))
        throw ConfigError("Drive currents must satisfy 0 < I_L < I_Dc < I_H.");
    if (!(modulation_amplitude > 0.0) ||
        modulation_amplitude > std::min(dc_bias - current_low, current_high - dc_bias))
        throw ConfigError("Modulation amplitude exceeds the linear drive range around the DC bias.");
    if (!(power_low > 0.0) || !(power_low < power_high))
        throw ConfigError("Drive power range must satisfy 0 < P_L < P_H.");
}

void OpticalFrontEnd::validate() const
{
    if (!(responsivity > 0.0) || !(conversion_factor > 0.0) || !(bandwidth > 0.0))
        throw ConfigError("Responsivity, conversion factor and bandwidth must be positive.");
}

void NoiseModel::validate() const
{
    if (mode == NoiseMode::fixed_sigma)
    {
        if (!(fixed_sigma2 > 0.0))
            throw ConfigError("Fixed noise variance must be positive.");
        return;
    }
    if (!(thermal_psd > 0.0) || !(electron_charge > 0.0) || !std::isfinite(rin_db_per_hz))
        throw ConfigError("Composite noise model needs a positive thermal PSD and electron charge.");
}

BlockageMask BlockageMask::none(std::size_t K, std::size_t L)
{
    return BlockageMask{K, L, std::vector<std::uint8_t>(K * L, 0)};
}

double rayleigh_range(const BeamParams &beam)
{
    return std::numbers::pi * beam.w0 * beam.w0 * beam.refractive_index / beam.wavelength;
}

double beam_radius(const BeamParams &beam, double d0)
{
    if (d0 < 0.0)
        throw std::domain_error("Beam travelling distance cannot be negative.");
    const double q = d0 / rayleigh_range(beam);
    return beam.w0 * std::sqrt(1.0 + q * q);
}

double intensity(const BeamParams &beam, double p_tr, double r, double d0)
{
    const double w = beam_radius(beam, d0);
    const double w2 = w * w;
    return 2.0 * p_tr / (std::numbers::pi * w2) * std::exp(-2.0 * r * r / w2);
}

double received_power_aligned(const BeamParams &beam, double p_tr, double r_m, double d0)
{
    const double w = beam_radius(beam, d0);
    return p_tr * -std::expm1(-2.0 * r_m * r_m / (w * w));
}

double channel_gain(const AccessPoint &ap, const Vec3 &user_position, std::size_t m, const BeamParams &beam,
                    const DetectorGeometry &detector)
{
    const double psi = incidence_angle(ap, user_position, detector, m);
    if (psi > detector.fov)
        return 0.0;
    const double phi = irradiance_angle(ap, user_position);
    if (phi >= std::numbers::pi / 2.0)
        return 0.0;

    const double d = (ap.position - user_position).norm();
    const double w = beam_radius(beam, d * std::cos(phi));
    const double w2 = w * w;
    const double s = std::sin(phi);
    return 2.0 * std::cos(psi) * detector.pd_area * detector.pd_gain / (std::numbers::pi * w2) *
           std::exp(-2.0 * d * d * s * s / w2);
}

ChannelMatrix build_channel_matrix(const UserTerminal &user, std::span<const AccessPoint> aps, const BeamParams &beam,
                                   const DetectorGeometry &detector, std::span<const std::uint8_t> blocked)
{
    const std::size_t L = aps.size();
    const std::size_t M = detector.num_photodiodes();
    if (M < L)
        throw ConfigError("Detector has fewer photodiodes than there are APs.");
    if (blocked.size() != L)
        throw std::invalid_argument("Blockage row must have one entry per AP.");

    ChannelMatrix ch;
    ch.user = user.id;
    ch.blocked.assign(blocked.begin(), blocked.end());
    // Only the first L reception modes are scheduled by the BIA pattern
    ch.gains.setZero(Eigen::Index(L), Eigen::Index(L));
    for (std::size_t l = 0; l < L; ++l)
    {
        if (blocked[l])
            continue;
        for (std::size_t m = 0; m < L; ++m)
            ch.gains(Eigen::Index(m), Eigen::Index(l)) = channel_gain(aps[l], user.position, m, beam, detector);
    }

    if (ch.gains.maxCoeff() <= 0.0)
        ch.rank = 0;
    else
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ch.gains);
        qr.setThreshold(1e-10);
        ch.rank = qr.rank();
    }
    ch.rank_deficient = ch.rank < Eigen::Index(L);
    return ch;
}

BlockageMask apply_blockage(Rng &rng, double p_block, std::size_t K, std::size_t L)
{
    if (!(p_block >= 0.0 && p_block <= 1.0))
        throw std::invalid_argument("Blockage probability must lie in [0, 1].");
    BlockageMask mask = BlockageMask::none(K, L);
    for (auto &f : mask.flags)
        f = uniform01(rng) < p_block ? 1 : 0;
    return mask;
}

double noise_variance(const OpticalFrontEnd &front_end, const NoiseModel &noise, double received_optical_power)
{
    if (noise.mode == NoiseMode::fixed_sigma)
        return noise.fixed_sigma2;
    if (received_optical_power < 0.0)
        throw std::domain_error("Received optical power cannot be negative.");

    const double i_ph = front_end.responsivity * received_optical_power;
    const double shot = 2.0 * noise.electron_charge * i_ph;
    const double rin = std::pow(10.0, noise.rin_db_per_hz / 10.0) * i_ph * i_ph;
    return (shot + noise.thermal_psd + rin) * front_end.bandwidth;
}

double exposure_level(const BeamParams &beam, double p_tr, const EyeSafetyParams &safety)
{
    const double w = beam_radius(beam, safety.hazard_distance);
    const double rc = safety.cornea_diameter / 2.0;
    const double dc2 = safety.cornea_diameter * safety.cornea_diameter;
    return p_tr / (std::numbers::pi * rc * rc) * -std::expm1(-dc2 / (2.0 * w * w));
}

double max_safe_power(const BeamParams &beam, const EyeSafetyParams &safety)
{
    const double w = beam_radius(beam, safety.hazard_distance);
    if (!(w > 0.0))
        throw std::domain_error("Beam radius at the hazard distance is zero.");
    const double dc2 = safety.cornea_diameter * safety.cornea_diameter;
    return std::numbers::pi / 4.0 * dc2 * safety.exposure_limit / -std::expm1(-dc2 / (2.0 * w * w));
}

bool ap_power_within_drive_range(const AccessPoint &ap, double ap_power, const EyeSafetyParams &safety)
{
    const double per_vcsel = ap_power / double(ap.num_vcsels());
    return per_vcsel >= safety.power_low && per_vcsel <= safety.power_high;
}

} // namespace owcnoma
