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
#include "owcnoma/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace owcnoma;

namespace
{
DetectorGeometry single_pd(double elevation, double azimuth)
{
    DetectorGeometry d;
    d.elevation = {elevation};
    d.azimuth = {azimuth};
    d.area_per_pd = 1e-5;
    return d;
}

AccessPoint ap_at(double x, double y, double z)
{
    AccessPoint ap;
    ap.position = {x, y, z};
    return ap;
}
} // namespace

TEST(Geometry, ApGridDefaultRoom)
{
    const auto aps = place_ap_grid(Room{}, 4, 4, 1);
    ASSERT_EQ(aps.size(), 16u);
    EXPECT_DOUBLE_EQ(aps[0].position.x, 1.0);
    EXPECT_DOUBLE_EQ(aps[0].position.y, 1.0);
    EXPECT_DOUBLE_EQ(aps[0].position.z, 3.0);
    EXPECT_DOUBLE_EQ(aps[1].position.x - aps[0].position.x + aps[1].position.y - aps[0].position.y, 2.0);
    for (const auto &ap : aps)
    {
        EXPECT_DOUBLE_EQ(ap.orientation.z, -1.0);
        EXPECT_EQ(ap.array_side, 1);
    }
}

TEST(Geometry, ApGridSingleAndArraySide)
{
    const auto one = place_ap_grid(Room{}, 1, 1, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_DOUBLE_EQ(one[0].position.x, 4.0);
    EXPECT_DOUBLE_EQ(one[0].position.y, 4.0);

    const auto five = place_ap_grid(Room{}, 4, 4, 5);
    for (const auto &ap : five)
        EXPECT_EQ(ap.num_vcsels(), 25);
    EXPECT_THROW(place_ap_grid(Room{}, 0, 4, 1), ConfigError);
}

TEST(Geometry, PhotodiodeNormals)
{
    const double pi = std::numbers::pi;
    const Vec3 zen = photodiode_normal(single_pd(0.0, 1.234), 0);
    EXPECT_DOUBLE_EQ(zen.z, 1.0);
    const Vec3 eq = photodiode_normal(single_pd(pi / 2, 0.0), 0);
    EXPECT_NEAR(eq.x, 1.0, 1e-15);
    EXPECT_NEAR(eq.z, 0.0, 1e-15);
    const Vec3 t = photodiode_normal(single_pd(pi / 4, pi / 2), 0);
    EXPECT_NEAR(t.x, 0.0, 1e-15);
    EXPECT_NEAR(t.y, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(t.z, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    EXPECT_THROW(photodiode_normal(single_pd(0.0, 0.0), 1), std::out_of_range);
}

TEST(Geometry, IrradianceAngles)
{
    EXPECT_DOUBLE_EQ(irradiance_angle(ap_at(0, 0, 3), {0, 0, 0}), 0.0);
    EXPECT_NEAR(irradiance_angle(ap_at(0, 0, 3), {3, 0, 0}), std::numbers::pi / 4, 1e-15);
    // acos(3/sqrt(34)), evaluated to 40 digits
    EXPECT_NEAR(irradiance_angle(ap_at(1, 1, 3), {4, 5, 0}), 1.030376826524312, 1e-14);
    EXPECT_THROW(irradiance_angle(ap_at(1, 1, 3), {1, 1, 3}), GeometryError);
}

TEST(Geometry, IncidenceAngles)
{
    const auto zen = single_pd(0.0, 0.0);
    EXPECT_NEAR(incidence_angle(ap_at(0, 0, 3), {0, 0, 0}, zen, 0), 0.0, 1e-15);
    const auto tilted = single_pd(std::numbers::pi / 4, 0.3);
    EXPECT_NEAR(incidence_angle(ap_at(0, 0, 3), {0, 0, 0}, tilted, 0), std::numbers::pi / 4, 1e-14);
}

TEST(Geometry, AnglesInvariantUnderTranslation)
{
    const auto det = DetectorGeometry::uniform_ring(4, 0.6, 4e-5, 1.5e-5, 1.0, 1.0);
    const Vec3 shift{0.37, -1.2, 0.5};
    const AccessPoint a = ap_at(2, 3, 3);
    AccessPoint b = a;
    b.position = a.position + shift;
    const Vec3 u{5.5, 1.25, 0.4};
    EXPECT_NEAR(irradiance_angle(a, u), irradiance_angle(b, u + shift), 1e-14);
    for (std::size_t m = 0; m < 4; ++m)
        EXPECT_NEAR(incidence_angle(a, u, det, m), incidence_angle(b, u + shift, det, m), 1e-14);
}

TEST(Geometry, UniformRingHasUnitNormals)
{
    const auto det = DetectorGeometry::uniform_ring(16, std::numbers::pi / 4, 2.4e-4, 1.5e-5, 1.0, std::numbers::pi / 3);
    ASSERT_EQ(det.num_photodiodes(), 16u);
    EXPECT_DOUBLE_EQ(det.area_per_pd, 2.4e-4 / 16);
    for (std::size_t m = 0; m < 16; ++m)
        EXPECT_NEAR(photodiode_normal(det, m).norm(), 1.0, 1e-12);
    EXPECT_NO_THROW(det.validate(16));
    EXPECT_THROW(det.validate(17), ConfigError);
}

TEST(Geometry, MedianSplitCentreBeatsCorner)
{
    const auto aps = place_ap_grid(Room{}, 4, 4, 1);
    std::vector<UserTerminal> users{{0, {4, 4, 0}}, {1, {0.1, 0.1, 0}}};
    const std::vector<double> power{1.0, 0.1};
    const auto c = classify_users(users, aps, MedianSplit{}, power);
    EXPECT_EQ(c.strong, std::vector<int>{0});
    EXPECT_EQ(c.weak, std::vector<int>{1});
}

TEST(Geometry, MedianSplitHalvesAndTies)
{
    const auto aps = place_ap_grid(Room{}, 4, 4, 1);
    std::vector<UserTerminal> users;
    std::vector<double> power;
    for (int k = 0; k < 20; ++k)
    {
        users.push_back({k, {0.3 * k, 1.0, 0}});
        power.push_back(double((k * 7) % 20));
    }
    const auto c = classify_users(users, aps, MedianSplit{}, power);
    EXPECT_EQ(c.weak.size(), 10u);
    EXPECT_EQ(c.strong.size(), 10u);

    std::vector<UserTerminal> four{{0, {1, 1, 0}}, {1, {2, 2, 0}}, {2, {3, 3, 0}}, {3, {4, 4, 0}}};
    const std::vector<double> equal(4, 2.0);
    const auto t = classify_users(four, aps, MedianSplit{}, equal);
    EXPECT_EQ(t.weak, (std::vector<int>{0, 1}));
    EXPECT_EQ(t.strong, (std::vector<int>{2, 3}));
}

TEST(Geometry, MedianSplitOddGivesWeakTheExtraUser)
{
    const auto aps = place_ap_grid(Room{}, 1, 1, 1);
    std::vector<UserTerminal> users{{0, {1, 1, 0}}, {1, {2, 2, 0}}, {2, {3, 3, 0}}};
    const std::vector<double> power{3.0, 2.0, 1.0};
    const auto c = classify_users(users, aps, MedianSplit{}, power);
    EXPECT_EQ(c.weak.size(), 2u);
    EXPECT_EQ(c.strong, std::vector<int>{0});
}

TEST(Geometry, DistanceThresholdWarnsOnEmptyClass)
{
    const auto aps = place_ap_grid(Room{}, 1, 1, 1);
    std::vector<UserTerminal> users{{0, {4, 4, 0}}, {1, {0, 0, 0}}};
    const std::vector<double> power{1.0, 1.0};
    const auto ok = classify_users(users, aps, DistanceThreshold{3.5}, power);
    EXPECT_EQ(ok.strong, std::vector<int>{0});
    EXPECT_EQ(ok.weak, std::vector<int>{1});
    EXPECT_FALSE(ok.empty_class_warning);
    const auto empty = classify_users(users, aps, DistanceThreshold{0.5}, power);
    EXPECT_TRUE(empty.empty_class_warning);
    EXPECT_EQ(empty.weak.size() + empty.strong.size(), 2u);
}
