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
#include "owcnoma/geometry.hpp"

#include "owcnoma/errors.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace owcnoma
{

void Room::validate() const
{
    if (!(width > 0.0) || !(depth > 0.0) || !(height > 0.0))
        throw ConfigError("Room dimensions must be positive.");
}

bool Room::contains(const Vec3 &p) const
{
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= depth && p.z >= 0.0 && p.z <= height;
}

void AccessPoint::validate() const
{
    if (array_side < 1)
        throw ConfigError("AP array side must be at least 1.");
    if (!position.is_finite())
        throw ConfigError("AP position must be finite.");
    if (std::abs(orientation.norm() - 1.0) > 1e-12)
        throw ConfigError("AP orientation must be a unit vector.");
}

void DetectorGeometry::validate(std::size_t min_photodiodes) const
{
    if (elevation.size() != azimuth.size())
        throw ConfigError("Detector elevation and azimuth lists differ in length.");
    if (elevation.size() < min_photodiodes)
        throw ConfigError("Detector needs at least " + std::to_string(min_photodiodes) +
                          " photodiodes (one per AP).");
    if (!(fov > 0.0) || fov > std::numbers::pi / 2.0 + 1e-15)
        throw ConfigError("Detector field of view must lie in (0, pi/2].");
    if (!(pd_area > 0.0) || !(pd_gain > 0.0) || area_per_pd < 0.0)
        throw ConfigError("Photodiode area and gain must be positive.");

    // Azimuths must be distinct modulo 2*pi
    std::vector<double> wrapped(azimuth.size());
    std::transform(azimuth.begin(), azimuth.end(), wrapped.begin(), [](double a)
                   { return std::fmod(std::fmod(a, 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi,
                                      2.0 * std::numbers::pi); });
    std::sort(wrapped.begin(), wrapped.end());
    for (std::size_t i = 1; i < wrapped.size(); ++i)
        if (wrapped[i] - wrapped[i - 1] < 1e-12)
            throw ConfigError("Photodiode azimuths must be distinct.");
    if (wrapped.size() > 1 && wrapped.front() + 2.0 * std::numbers::pi - wrapped.back() < 1e-12)
        throw ConfigError("Photodiode azimuths must be distinct.");
}

DetectorGeometry DetectorGeometry::uniform_ring(std::size_t M, double elevation, double receiver_area, double pd_area,
                                                double pd_gain, double fov)
{
    if (M == 0)
        throw ConfigError("Detector needs at least one photodiode.");
    DetectorGeometry d;
    d.elevation.assign(M, elevation);
    d.azimuth.resize(M);
    for (std::size_t m = 0; m < M; ++m)
        d.azimuth[m] = 2.0 * std::numbers::pi * double(m) / double(M);
    d.area_per_pd = receiver_area / double(M);
    d.pd_area = pd_area;
    d.pd_gain = pd_gain;
    d.fov = fov;
    return d;
}

std::vector<AccessPoint> place_ap_grid(const Room &room, int rows, int cols, int array_side)
{
    room.validate();
    if (rows < 1 || cols < 1)
        throw ConfigError("AP grid needs at least one row and one column.");
    if (array_side < 1)
        throw ConfigError("AP array side must be at least 1.");

    const double dx = room.width / double(cols);
    const double dy = room.depth / double(rows);

    std::vector<AccessPoint> aps;
    aps.reserve(std::size_t(rows) * std::size_t(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
        {
            AccessPoint ap;
            ap.position = {dx * (double(c) + 0.5), dy * (double(r) + 0.5), room.height};
            ap.array_side = array_side;
            aps.push_back(ap);
        }
    return aps;
}

Vec3 photodiode_normal(const DetectorGeometry &detector, std::size_t m)
{
    if (m >= detector.num_photodiodes())
        throw std::out_of_range("Photodiode index " + std::to_string(m) + " out of range.");
    const double th = detector.elevation[m], al = detector.azimuth[m];
    return {std::sin(th) * std::cos(al), std::sin(th) * std::sin(al), std::cos(th)};
}

namespace
{
double clamped_acos(double v)
{
    return std::acos(std::clamp(v, -1.0, 1.0));
}

Vec3 link_vector(const AccessPoint &ap, const Vec3 &user_position, double &length)
{
    const Vec3 d = ap.position - user_position;
    length = d.norm();
    if (!(length > 0.0))
        throw GeometryError("User and AP positions coincide.");
    return d;
}
} // namespace

double irradiance_angle(const AccessPoint &ap, const Vec3 &user_position)
{
    double len = 0.0;
    const Vec3 d = link_vector(ap, user_position, len);
    // n_tr points from the AP towards the floor, d from the user towards the AP
    return clamped_acos(ap.orientation.dot(-d) / len);
}

double incidence_angle(const AccessPoint &ap, const Vec3 &user_position, const DetectorGeometry &detector,
                       std::size_t m)
{
    const Vec3 n = photodiode_normal(detector, m);
    double len = 0.0;
    const Vec3 d = link_vector(ap, user_position, len);
    return clamped_acos(n.dot(d) / len);
}

Classification classify_users(std::span<const UserTerminal> users, std::span<const AccessPoint> aps,
                              const ClassificationRule &rule, std::span<const double> aggregate_power)
{
    Classification out;

    if (const auto *thr = std::get_if<DistanceThreshold>(&rule))
    {
        for (const auto &u : users)
        {
            const bool strong = std::all_of(aps.begin(), aps.end(), [&](const AccessPoint &ap)
                                            { return (ap.position - u.position).norm() <= thr->d_th; });
            (strong ? out.strong : out.weak).push_back(u.id);
        }
        std::sort(out.weak.begin(), out.weak.end());
        std::sort(out.strong.begin(), out.strong.end());
        out.empty_class_warning = users.size() > 0 && (out.weak.empty() || out.strong.empty());
        return out;
    }

    if (aggregate_power.size() != users.size())
        throw std::invalid_argument("classify_users: one aggregate power value per user is required.");

    std::vector<std::size_t> order(users.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
              {
                  if (aggregate_power[a] != aggregate_power[b])
                      return aggregate_power[a] < aggregate_power[b];
                  return users[a].id < users[b].id; });

    const std::size_t n_weak = (users.size() + 1) / 2;
    for (std::size_t r = 0; r < order.size(); ++r)
        (r < n_weak ? out.weak : out.strong).push_back(users[order[r]].id);

    std::sort(out.weak.begin(), out.weak.end());
    std::sort(out.strong.begin(), out.strong.end());
    return out;
}

} // namespace owcnoma
