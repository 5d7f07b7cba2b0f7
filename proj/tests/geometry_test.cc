/* Copyright 2026 The odeval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "odeval/geometry.h"
#include "odeval/oracles.h"
#include "test_util.h"

namespace odeval {
namespace {

using testing::Rng;

constexpr double kPi = std::numbers::pi;

OrientedBox3d B(double x, double y, double z, double l, double w, double h,
                double yaw = 0.0) {
  return MakeBox({x, y, z}, {l, w, h}, yaw);
}

TEST(BevIouTest, Examples) {
  const auto a = B(0, 0, 0, 2, 2, 1);
  EXPECT_EQ(BevIou(a, a), 1.0);
  EXPECT_NEAR(BevIou(a, B(1, 0, 0, 2, 2, 1)), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(BevIou(a, B(5, 0, 0, 2, 2, 1)), 0.0);
  // Touching edges share no area.
  EXPECT_EQ(BevIou(a, B(2, 0, 0, 2, 2, 1)), 0.0);
}

TEST(BevIouTest, RotatedSquareInsideCircleOfOther) {
  // Unit square vs the same square rotated 45 degrees: the overlap is a
  // regular octagon of area 2(sqrt(2) - 1).
  const auto a = B(0, 0, 0, 1, 1, 1);
  const auto b = B(0, 0, 0, 1, 1, 1, kPi / 4);
  const double inter = 2 * (std::sqrt(2.0) - 1);
  EXPECT_NEAR(BevIou(a, b), inter / (2 - inter), 1e-12);
}

TEST(BevIouTest, IdentityUpToYawPeriod) {
  const auto a = B(1, 2, 0, 3, 1, 1, 0.3);
  const auto b = B(1, 2, 0, 3, 1, 1, 0.3 + 2 * kPi);
  EXPECT_NEAR(BevIou(a, b), 1.0, 1e-12);
  // A box turned by pi covers the same footprint.
  EXPECT_NEAR(BevIou(a, B(1, 2, 0, 3, 1, 1, 0.3 + kPi)), 1.0, 1e-9);
}

TEST(BevIouTest, MatchesMonteCarloOnRandomPairs) {
  Rng rng(2024);
  for (int i = 0; i < 20; ++i) {
    const auto a = rng.RandomBox(1.5);
    const auto b = rng.RandomBox(1.5);
    const auto mc = oracle::McBevIou(a, b, 200000, 100 + i);
    EXPECT_NEAR(BevIou(a, b), mc.value, std::max(5 * mc.std_error, 1e-9))
        << "pair " << i;
  }
}

TEST(BevIouTest, Properties) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = rng.RandomBox();
    const auto b = rng.RandomBox();
    const double ab = BevIou(a, b);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0);
    ASSERT_NEAR(ab, BevIou(b, a), 1e-12);
    if (!(a == b)) {
      ASSERT_LT(ab, 1.0);
    }

    // Invariant under a rigid motion applied to both boxes.
    const double phi = rng.Uniform(-kPi, kPi);
    const Eigen::Vector2d t(rng.Uniform(-10, 10), rng.Uniform(-10, 10));
    auto move = [&](OrientedBox3d box) {
      const Eigen::Vector2d c = box.bev_center();
      box.center.head<2>() =
          Eigen::Vector2d(std::cos(phi) * c.x() - std::sin(phi) * c.y(),
                          std::sin(phi) * c.x() + std::cos(phi) * c.y()) +
          t;
      box.yaw = NormalizeYaw(box.yaw + phi);
      return box;
    };
    ASSERT_NEAR(BevIou(move(a), move(b)), ab, 1e-9);
  }
}

TEST(Iou3dTest, Examples) {
  const auto a = B(0, 0, 1, 2, 2, 2);
  EXPECT_EQ(Iou3d(a, a), 1.0);
  EXPECT_EQ(Iou3d(a, B(0, 0, 5, 2, 2, 2)), 0.0);
  // z-extents [0,2] vs [1,3].
  EXPECT_NEAR(Iou3d(a, B(0, 0, 2, 2, 2, 2)), 1.0 / 3.0, 1e-12);
}

TEST(Iou3dTest, AgreesWithVolumeIdentity) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto a = rng.RandomBox(2.0);
    const auto b = rng.RandomBox(2.0);
    // Intersection area from the MC-free identity IoU = I / (A + B - I).
    const double bev = BevIou(a, b);
    const double area_a = a.dims.x() * a.dims.y();
    const double area_b = b.dims.x() * b.dims.y();
    const double inter_area = bev * (area_a + area_b) / (1 + bev);
    const double dz = std::max(
        0.0, std::min(a.z_max(), b.z_max()) - std::max(a.z_min(), b.z_min()));
    const double inter = inter_area * dz;
    const double expected = inter / (a.volume() + b.volume() - inter);
    ASSERT_NEAR(Iou3d(a, b), expected, 1e-9);
    ASSERT_NEAR(Iou3d(a, b), Iou3d(b, a), 1e-12);
  }
}

TEST(CenterDistanceTest, Examples) {
  EXPECT_EQ(CenterDistanceBev(B(0, 0, 0, 1, 1, 1), B(0, 0, 0, 1, 1, 1)), 0.0);
  EXPECT_EQ(CenterDistanceBev(B(0, 0, 0, 1, 1, 1), B(3, 4, 10, 1, 1, 1)), 5.0);
  EXPECT_EQ(CenterDistanceBev(B(1, 1, 0, 1, 1, 1), B(1, 1, 5, 1, 1, 1)), 0.0);
}

TEST(CenterDistanceTest, TriangleInequality) {
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    const auto a = rng.RandomBox(20);
    const auto b = rng.RandomBox(20);
    const auto c = rng.RandomBox(20);
    ASSERT_LE(CenterDistanceBev(a, c),
              CenterDistanceBev(a, b) + CenterDistanceBev(b, c) + 1e-12);
  }
}

TEST(YawDeltaTest, Examples) {
  EXPECT_NEAR(YawDelta(0.0, kPi), kPi, 1e-15);
  EXPECT_NEAR(YawDelta(0.1, 2 * kPi + 0.2), 0.1, 1e-12);
  EXPECT_NEAR(YawDelta(-3.0, 3.0), 2 * kPi - 6, 1e-12);
}

TEST(AlignedIouTest, Examples) {
  EXPECT_EQ(AlignedIou(B(0, 0, 0, 2, 2, 2), B(9, 9, 9, 2, 2, 2, 1.0)), 1.0);
  EXPECT_NEAR(AlignedIou(B(0, 0, 0, 4, 2, 2), B(5, 1, 0, 2, 2, 2, 2.0)), 0.5,
              1e-12);
  EXPECT_NEAR(AlignedIou(B(0, 0, 0, 1, 1, 1), B(0, 0, 0, 2, 2, 2)), 1.0 / 8,
              1e-12);
}

TEST(AlignedIouTest, NonNestedDims) {
  // (4,1,1) vs (1,4,1): overlap 1x1x1, union 4 + 4 - 1.
  EXPECT_NEAR(AlignedIou(B(0, 0, 0, 4, 1, 1), B(0, 0, 0, 1, 4, 1)), 1.0 / 7,
              1e-12);
}

}  // namespace
}  // namespace odeval
