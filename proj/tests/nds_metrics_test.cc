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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "odeval/ap_metrics.h"
#include "odeval/nds_metrics.h"
#include "test_util.h"

namespace odeval {
namespace {

using testing::Box;
using testing::CodeOf;
using testing::Det;
using testing::Frame;
using testing::Gt;
using testing::PerfectDetections;
using testing::Rng;

constexpr double kPi = std::numbers::pi;

std::vector<GroundTruthObject> Scene() {
  return {Gt(Box(5, 1, 0.2), 1, 0, {2, 0}), Gt(Box(12, -3, 1.0), 2, 0, {0, 1}),
          Gt(Box(-8, 4, -2.0, 0.6, 0.6, 1.8), 3, 1, {1, 1})};
}

TEST(CenterDistanceApTest, Examples) {
  const auto gt = Scene();
  NdsConfig config;
  EXPECT_EQ(CenterDistanceAp(std::vector{Frame(0, gt, PerfectDetections(gt))},
                             config),
            1.0);

  std::vector<Detection> off = PerfectDetections(gt);
  for (Detection& d : off) d.box.center.x() += 1.5;
  EXPECT_EQ(CenterDistanceAp(std::vector{Frame(0, gt, off)}, config), 0.0);
}

TEST(CenterDistanceApTest, DecoupledFromIou) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(10, 0), 1)};
  const std::vector<Detection> tiny = {
      Det(MakeBox({10.9, 0, 0.75}, {0.1, 0.1, 0.1}, 0), 0.9)};
  const std::vector frames = {Frame(0, gt, tiny)};
  EXPECT_EQ(CenterDistanceAp(frames, NdsConfig{}), 1.0);
  EXPECT_EQ(RouteAp(frames, ApConfig{}).ap, 0.0);
}

TEST(TpErrorsTest, ExactDetections) {
  const auto gt = Scene();
  const NdsSummary s =
      RouteNds(std::vector{Frame(0, gt, PerfectDetections(gt))}, NdsConfig{});
  EXPECT_EQ(s.errors.ate, 0.0);
  EXPECT_EQ(s.errors.ase, 0.0);
  EXPECT_EQ(s.errors.aoe, 0.0);
  EXPECT_EQ(s.errors.ave, 0.0);
  EXPECT_EQ(s.nds, 1.0);
  EXPECT_FALSE(s.errors.no_tp);
}

TEST(TpErrorsTest, SinglePairDefinitions) {
  const GroundTruthObject gt = Gt(Box(5, 0, 0.0), 1, 0, {3, 0});
  const Detection det = Det(Box(5.5, 0, kPi / 2), 0.9, 0, Eigen::Vector2d(1, 0));
  const TpPairError e = MeasurePair(gt, det);
  EXPECT_NEAR(e.ate, 0.5, 1e-12);
  EXPECT_NEAR(e.ase, 0.0, 1e-12);
  EXPECT_NEAR(e.aoe, kPi / 2, 1e-12);
  ASSERT_TRUE(e.ave.has_value());
  EXPECT_NEAR(*e.ave, 2.0, 1e-12);

  const TpPairError scale =
      MeasurePair(Gt(MakeBox({0, 0, 0}, {4, 2, 2}, 0), 1),
                  Det(MakeBox({0, 0, 0}, {2, 2, 2}, 0), 0.9));
  EXPECT_NEAR(scale.ase, 0.5, 1e-12);
}

TEST(TpErrorsTest, NoTruePositivesUsesCaps) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1)};
  const std::vector<Detection> far = {Det(Box(30, 0), 0.9)};
  NdsConfig config;
  const NdsSummary s = RouteNds(std::vector{Frame(0, gt, far)}, config);
  EXPECT_TRUE(s.errors.no_tp);
  EXPECT_EQ(s.cd_map, 0.0);
  EXPECT_EQ(s.nds, 0.0);
}

TEST(TpErrorsTest, MissingVelocityFallsBackToCap) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1, 0, {1, 0})};
  const std::vector<Detection> det = {Det(Box(5, 0), 0.9)};
  const NdsSummary s = RouteNds(std::vector{Frame(0, gt, det)}, NdsConfig{});
  EXPECT_TRUE(s.errors.no_velocity);
  EXPECT_EQ(s.errors.ave, NdsConfig{}.v_cap);
}

TEST(NdsTest, Examples) {
  NdsConfig config;
  TpErrors zero;
  EXPECT_EQ(Nds(1.0, zero, config), 1.0);

  TpErrors capped;
  capped.ate = 5.0;
  capped.ase = 1.0;
  capped.aoe = kPi;
  capped.ave = 20.0;
  EXPECT_EQ(Nds(0.0, capped, config), 0.0);

  // Normalized errors (0.2, 0.5, 0.1, 0.4).
  TpErrors e;
  e.ate = 0.2 * config.threshold_m;
  e.ase = 0.5;
  e.aoe = 0.1 * kPi;
  e.ave = 0.4 * config.v_cap;
  EXPECT_NEAR(Nds(0.8, e, config), 0.75, 1e-12);
}

TEST(NdsTest, ZeroTpWeightsReduceToMap) {
  NdsConfig config;
  config.tp_weights = {0, 0, 0, 0};
  TpErrors e;
  e.ate = 0.3;
  e.ase = 0.7;
  for (double m : {0.0, 0.123, 0.5, 1.0}) EXPECT_EQ(Nds(m, e, config), m);
  config.tp_weights = {1, -1, 0, 0};
  EXPECT_EQ(CodeOf([&] { Nds(0.5, e, config); }), ErrorCode::kInvalidArgument);
}

TEST(NdsTest, Monotonicity) {
  Rng rng(8);
  NdsConfig config;
  for (int trial = 0; trial < 2000; ++trial) {
    TpErrors e;
    e.ate = rng.Uniform(0, 2);
    e.ase = rng.Uniform(0, 1);
    e.aoe = rng.Uniform(0, kPi);
    e.ave = rng.Uniform(0, 15);
    const double map = rng.Uniform(0, 1);
    const double base = Nds(map, e, config);
    ASSERT_GE(base, 0.0);
    ASSERT_LE(base, 1.0);
    ASSERT_GE(Nds(std::min(1.0, map + 0.1), e, config), base);
    TpErrors worse = e;
    switch (rng.Int(0, 3)) {
      case 0: worse.ate += 0.1; break;
      case 1: worse.ase = std::min(1.0, worse.ase + 0.1); break;
      case 2: worse.aoe = std::min(kPi, worse.aoe + 0.1); break;
      default: worse.ave += 1.0; break;
    }
    ASSERT_LE(Nds(map, worse, config), base);
  }
}

TEST(RecallSweepTest, PerfectDetectionsGiveZeroErrors) {
  const auto gt = Scene();
  NdsConfig config;
  config.recall_sweep_mode = true;
  const NdsSummary s =
      RouteNds(std::vector{Frame(0, gt, PerfectDetections(gt))}, config);
  EXPECT_EQ(s.nds, 1.0);
}

TEST(RecallSweepTest, LaterHighErrorPairsDiluted) {
  // Ten TPs, the last (lowest confidence) one 0.9 m off.
  std::vector<TpPairError> pairs(10);
  for (int i = 0; i < 10; ++i) {
    pairs[i].confidence = 1.0 - 0.05 * i;
    pairs[i].recall = (i + 1) / 10.0;
    pairs[i].ave = 0.0;
  }
  pairs[9].ate = 0.9;
  NdsConfig config;
  const TpErrors mean = TpErrorMeans(pairs, config);
  EXPECT_NEAR(mean.ate, 0.09, 1e-12);
  const TpErrors sweep = TpErrorRecallSweep(pairs, config);
  // Levels 0.91..1.00 (10 of 91) see the cumulative mean 0.09.
  EXPECT_NEAR(sweep.ate, 0.09 * 10.0 / 91.0, 1e-9);
}

TEST(IdNdsTest, UniformDistancesMatchNds) {
  std::vector<GroundTruthObject> gt;
  std::vector<Detection> det;
  for (int i = 0; i < 5; ++i) {
    const double a = i * 2 * kPi / 5;
    gt.push_back(Gt(Box(20 * std::cos(a), 20 * std::sin(a), a), i, 0, {1, 0}));
    OrientedBox3d b = gt.back().box;
    b.center.x() += 0.1 * i;
    det.push_back(Det(b, 0.9 - 0.1 * i, 0, Eigen::Vector2d(1, 0.2 * i)));
  }
  const std::vector frames = {Frame(0, gt, det)};
  NdsConfig config;
  EXPECT_NEAR(IdNds(frames, config), RouteNds(frames, config).nds, 1e-12);
}

TEST(IdNdsTest, ErrorPlacementByDistance) {
  auto build = [](bool far_has_error) {
    std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1, 0, {1, 0}),
                                         Gt(Box(40, 0), 2, 0, {1, 0})};
    std::vector<Detection> det = PerfectDetections(gt);
    det[far_has_error ? 1 : 0].box.center.y() += 0.8;
    return std::vector{Frame(0, gt, det)};
  };
  NdsConfig config;
  const auto far = build(true);
  const auto near = build(false);
  EXPECT_GT(IdNds(far, config), RouteNds(far, config).nds);
  EXPECT_LT(IdNds(near, config), RouteNds(near, config).nds);
}

}  // namespace
}  // namespace odeval
