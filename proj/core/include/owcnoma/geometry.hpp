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
#ifndef OWCNOMA_GEOMETRY_HPP
#define OWCNOMA_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace owcnoma
{

struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

struct Room
{
    double width = 8.0; // x extent [m]
    double depth = 8.0; // y extent [m]
    double height = 3.0;

    void validate() const;
    bool contains(const Vec3 &p) const;
};

// An optical AP: an L_v x L_v VCSEL array modelled as a point source at the array centre.
struct AccessPoint
{
    Vec3 position;
    int array_side = 1;
    Vec3 orientation{0.0, 0.0, -1.0}; // unit normal of the emitting face

    int num_vcsels() const { return array_side * array_side; }
    void validate() const;
};

// Reconfigurable multi-photodiode receiver; each photodiode is one reception mode.
struct DetectorGeometry
{
    std::vector<double> elevation; // polar angle from zenith [rad], per photodiode
    std::vector<double> azimuth;   // [rad], per photodiode
    double area_per_pd = 0.0;      // A_m = A_rec / M [m^2]
    double pd_area = 1.5e-5;       // physical photodiode area A_pd [m^2]
    double pd_gain = 1.0;          // G_m
    double fov = 1.0471975511965976;

    std::size_t num_photodiodes() const { return elevation.size(); }
    void validate(std::size_t min_photodiodes = 1) const;

    // M photodiodes at a common elevation with azimuths spread uniformly over 2*pi.
    static DetectorGeometry uniform_ring(std::size_t M, double elevation, double receiver_area, double pd_area,
                                         double pd_gain, double fov);
};

enum class UserClass
{
    unassigned,
    weak,
    strong
};

struct UserTerminal
{
    int id = 0;
    Vec3 position;
    UserClass user_class = UserClass::unassigned;
};

// Uniform ceiling grid of rows x cols APs at z = room.height, pointing straight down.
std::vector<AccessPoint> place_ap_grid(const Room &room, int rows, int cols, int array_side);

// [sin(theta) cos(alpha), sin(theta) sin(alpha), cos(theta)] for photodiode m.
Vec3 photodiode_normal(const DetectorGeometry &detector, std::size_t m);

// Angle between the AP normal and d = P_ap - P_user, in [0, pi].
double irradiance_angle(const AccessPoint &ap, const Vec3 &user_position);

// Angle between photodiode m's normal and the direction from the user towards the AP.
double incidence_angle(const AccessPoint &ap, const Vec3 &user_position, const DetectorGeometry &detector,
                       std::size_t m);

struct MedianSplit
{
};
struct DistanceThreshold
{
    double d_th = 0.0;
};
using ClassificationRule = std::variant<MedianSplit, DistanceThreshold>;

struct Classification
{
    std::vector<int> weak;   // user ids, ascending
    std::vector<int> strong; // user ids, ascending
    bool empty_class_warning = false;
};

// Splits users into weak and strong classes.
//
// MedianSplit ranks users by `aggregate_power` (one entry per user, same order as `users`)
// and labels the upper half strong. Ties are broken by ascending id, lower ids ending up
// weak. For odd K the weak class receives the extra user; callers pad the strong class with
// a virtual zero-rate user.
//
// DistanceThreshold marks a user strong iff its distance to every AP is <= d_th. If that
// leaves a class empty the warning flag is raised and the partition is returned as is.
Classification classify_users(std::span<const UserTerminal> users, std::span<const AccessPoint> aps,
                              const ClassificationRule &rule, std::span<const double> aggregate_power);

} // namespace owcnoma

#endif
