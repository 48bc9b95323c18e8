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
#ifndef OWCNOMA_CHANNEL_HPP
#define OWCNOMA_CHANNEL_HPP

#include "owcnoma/geometry.hpp"
#include "owcnoma/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace owcnoma
{

// Gaussian beam of a single VCSEL.
struct BeamParams
{
    double w0 = 8e-6;          // beam waist [m]
    double wavelength = 1.55e-6;
    double refractive_index = 1.0;
    double theta_fwhm = 0.06981317007977318; // 4 degrees

    double divergence() const; // Theta_D = Theta_F / sqrt(2 ln 2)
    void validate() const;
};

struct EyeSafetyParams
{
    double cornea_diameter = 7e-3;  // d_c [m]
    double exposure_limit = 232.0;  // E_e,max(t_e) [W/m^2]
    double hazard_distance = 0.2;   // d_h [m]
    double current_low = 2e-3;      // I_L [A]
    double current_high = 12e-3;    // I_H [A]
    double dc_bias = 7e-3;          // I_v^Dc [A]
    double modulation_amplitude = 4e-3; // eta_v [A]
    double power_low = 1e-3;        // P_L [W]
    double power_high = 0.1;        // P_H [W]

    void validate() const;
};

struct OpticalFrontEnd
{
    double responsivity = 0.9;      // f [A/W]
    double conversion_factor = 1.0; // rho [W/A]
    double bandwidth = 1.5e9;       // B [Hz]

    void validate() const;
};

enum class NoiseMode
{
    composite,
    fixed_sigma
};

struct NoiseModel
{
    double rin_db_per_hz = -155.0;
    double thermal_psd = 1e-21; // [A^2/Hz], about 32 pA/sqrt(Hz)
    double electron_charge = 1.602176634e-19;
    NoiseMode mode = NoiseMode::composite;
    double fixed_sigma2 = 0.0; // used when mode == fixed_sigma [A^2]

    void validate() const;
};

// Per-user L x L optical gain matrix: row m holds the gains seen by photodiode m from each AP.
struct ChannelMatrix
{
    int user = 0;
    Eigen::MatrixXd gains;
    std::vector<std::uint8_t> blocked; // one flag per AP
    bool rank_deficient = false;
    Eigen::Index rank = 0;
};

// K x L link blockage flags, row-major by user.
struct BlockageMask
{
    std::size_t num_users = 0;
    std::size_t num_aps = 0;
    std::vector<std::uint8_t> flags;

    bool blocked(std::size_t user, std::size_t ap) const { return flags[user * num_aps + ap] != 0; }
    std::span<const std::uint8_t> row(std::size_t user) const
    {
        return {flags.data() + user * num_aps, num_aps};
    }
    static BlockageMask none(std::size_t K, std::size_t L);
};

double rayleigh_range(const BeamParams &beam);

// W(d0) = W0 sqrt(1 + (d0/d_Ra)^2); throws std::domain_error for d0 < 0.
double beam_radius(const BeamParams &beam, double d0);

// Transverse intensity of the beam at radial offset r and axial distance d0 [W/m^2].
double intensity(const BeamParams &beam, double p_tr, double r, double d0);

// Power captured by a circular aperture of radius r_m centred on the beam axis.
double received_power_aligned(const BeamParams &beam, double p_tr, double r_m, double d0);

// Received-to-transmitted optical power ratio for photodiode m, using the small-detector
// approximation with r = d sin(phi), d0 = d cos(phi). Zero outside the field of view and
// for receivers behind the emitting plane.
double channel_gain(const AccessPoint &ap, const Vec3 &user_position, std::size_t m, const BeamParams &beam,
                    const DetectorGeometry &detector);

// Per-VCSEL gains for all (photodiode, AP) pairs. Blocked AP columns are zeroed and the
// rank (relative tolerance 1e-10) is recorded; rank < L sets rank_deficient.
ChannelMatrix build_channel_matrix(const UserTerminal &user, std::span<const AccessPoint> aps, const BeamParams &beam,
                                   const DetectorGeometry &detector, std::span<const std::uint8_t> blocked);

// Independent Bernoulli(p_block) draw per (user, AP) link.
BlockageMask apply_blockage(Rng &rng, double p_block, std::size_t K, std::size_t L);

// Receiver noise variance sigma_z^2 [A^2] for a given received optical power.
double noise_variance(const OpticalFrontEnd &front_end, const NoiseModel &noise, double received_optical_power);

// Cornea-averaged irradiance at the hazard distance.
double exposure_level(const BeamParams &beam, double p_tr, const EyeSafetyParams &safety);

// Largest per-beam power with exposure_level(p) == exposure_limit.
double max_safe_power(const BeamParams &beam, const EyeSafetyParams &safety);

// Checks P_L <= P_l / L_v^2 <= P_H for an AP transmitting ap_power in total.
bool ap_power_within_drive_range(const AccessPoint &ap, double ap_power, const EyeSafetyParams &safety);

} // namespace owcnoma

#endif
