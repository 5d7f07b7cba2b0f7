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
#include "odeval/matching.h"
#include "odeval/oracles.h"
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

PrInput Samples(std::vector<std::pair<double, bool>> dets, double gt_mass) {
  PrInput in;
  in.gt_mass = gt_mass;
  for (const auto& [c, tp] : dets) {
    PrSample s;
    s.confidence = c;
    s.true_positive = tp;
    in.samples.push_back(s);
  }
  return in;
}

TEST(AccumulatePrTest, Examples) {
  PrCurve one = AccumulatePr(Samples({{0.9, true}}, 1));
  ASSERT_EQ(one.points.size(), 1u);
  EXPECT_EQ(one.points[0].recall, 1.0);
  EXPECT_EQ(one.points[0].precision, 1.0);

  PrCurve two = AccumulatePr(Samples({{0.8, false}, {0.9, true}}, 1));
  ASSERT_EQ(two.points.size(), 2u);
  EXPECT_EQ(two.points[0].recall, 1.0);
  EXPECT_EQ(two.points[0].precision, 1.0);
  EXPECT_EQ(two.points[1].recall, 1.0);
  EXPECT_EQ(two.points[1].precision, 0.5);
}

TEST(AccumulatePrTest, EqualConfidencesFormOnePoint) {
  PrCurve c = AccumulatePr(Samples({{0.5, false}, {0.5, true}}, 1));
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].precision, 0.5);
}

TEST(AccumulatePrTest, ZeroGroundTruthIsUndefined) {
  EXPECT_EQ(CodeOf([] { AccumulatePr(Samples({{0.5, false}}, 0)); }),
            ErrorCode::kUndefinedRecall);
}

TEST(Ap40Test, Examples) {
  EXPECT_EQ(Ap40(AccumulatePr(Samples({{0.9, true}}, 1))), 1.0);
  // Recall 0.5 at precision 1 and nothing further.
  EXPECT_NEAR(Ap40(AccumulatePr(Samples({{0.9, true}}, 2))), 0.5, 1e-15);
  EXPECT_EQ(Ap40(AccumulatePr(Samples({{0.9, false}, {0.3, false}}, 2))), 0.0);
}

TEST(AosTest, OrientationSimilarity) {
  for (const auto& [delta, factor] :
       std::vector<std::pair<double, double>>{{0.0, 1.0}, {kPi, 0.0},
                                              {kPi / 2, 0.5}}) {
    const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0, 0.0, 2, 2), 1)};
    const std::vector<Detection> det = {Det(Box(5, 0, delta, 2, 2), 0.9)};
    ApConfig config;
    config.iou_kind = IouKind::kBev;
    const ApSummary s = RouteAp(std::vector{Frame(0, gt, det)}, config);
    EXPECT_EQ(s.ap, 1.0);
    EXPECT_NEAR(s.aos, factor * s.ap, 1e-12) << delta;
  }
}

TEST(RouteApTest, SingleClassMapEqualsAp) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1), Gt(Box(15, 0), 2)};
  const std::vector<Detection> det = {Det(Box(5, 0), 0.9)};
  ApConfig config;
  const ApSummary s = RouteAp(std::vector{Frame(0, gt, det)}, config);
  EXPECT_NEAR(s.ap, 0.5, 1e-15);
}

TEST(RouteApTest, ClassesAveragedWithEqualWeight) {
  // Class 0 perfect, class 1 half recall; class 2 has detections only and
  // is skipped.
  const std::vector<GroundTruthObject> gt = {
      Gt(Box(5, 0), 1, 0), Gt(Box(15, 0), 2, 1), Gt(Box(25, 0), 3, 1)};
  const std::vector<Detection> det = {Det(Box(5, 0), 0.9, 0),
                                      Det(Box(15, 0), 0.9, 1),
                                      Det(Box(40, 0), 0.9, 2)};
  const ApSummary s = RouteAp(std::vector{Frame(0, gt, det)}, ApConfig{});
  EXPECT_NEAR(s.ap, (1.0 + 0.5) / 2, 1e-15);
}

TEST(RouteApTest, NoGroundTruthIsUndefined) {
  const std::vector<Detection> det = {Det(Box(5, 0), 0.9)};
  EXPECT_EQ(CodeOf([&] { RouteAp(std::vector{Frame(0, {}, det)}, ApConfig{}); }),
            ErrorCode::kUndefinedRecall);
}

TEST(IdApTest, EquidistantObjectsMatchPlainAp) {
  // Ring of objects at 10 m, some missed, one false positive at 10 m.
  std::vector<GroundTruthObject> gt;
  std::vector<Detection> det;
  for (int i = 0; i < 6; ++i) {
    const double a = i * kPi / 3;
    gt.push_back(Gt(Box(10 * std::cos(a), 10 * std::sin(a), a), i));
    if (i % 3 != 0) det.push_back(Det(gt.back().box, 0.5 + 0.05 * i));
  }
  det.push_back(Det(Box(0, -10, 0.3), 0.7));
  const std::vector frames = {Frame(0, gt, det)};
  ApConfig config;
  EXPECT_NEAR(IdAp(frames, config), RouteAp(frames, config).ap, 1e-12);
}

TEST(IdApTest, MissingFarObjectCostsLessRecall) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1),
                                             Gt(Box(50, 0), 2)};
  const std::vector frames_far_missed = {
      Frame(0, gt, std::vector{Det(gt[0].box, 0.9)})};
  const std::vector frames_near_missed = {
      Frame(0, gt, std::vector{Det(gt[1].box, 0.9)})};
  ApConfig config;
  const double ap = RouteAp(frames_far_missed, config).ap;
  EXPECT_NEAR(ap, 0.5, 1e-15);
  // Recall mass lost is 0.02 / 0.22 = 1/11, so recall reaches 10/11.
  const double id_far = IdAp(frames_far_missed, config);
  EXPECT_NEAR(id_far, 36.0 / 40.0, 1e-12);
  EXPECT_GT(id_far, ap);
  EXPECT_LT(IdAp(frames_near_missed, config), RouteAp(frames_near_missed, config).ap);
}

TEST(ApPropertyTest, AosBoundedByApBoundedByOne) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<GroundTruthObject> gt;
    std::vector<Detection> det;
    for (int i = 0; i < rng.Int(1, 6); ++i) {
      gt.push_back(Gt(rng.RandomBox(6), i, rng.Int(0, 1)));
      if (rng.Coin(0.7)) {
        OrientedBox3d b = gt.back().box;
        b.center.x() += rng.Uniform(-0.4, 0.4);
        b.yaw = NormalizeYaw(b.yaw + rng.Uniform(-3, 3));
        det.push_back(Det(b, rng.Uniform(0, 1), gt.back().class_id));
      }
    }
    for (int i = 0; i < rng.Int(0, 3); ++i) {
      det.push_back(Det(rng.RandomBox(6), rng.Uniform(0, 1), rng.Int(0, 1)));
    }
    ApConfig config;
    config.iou_kind = IouKind::kBev;
    config.iou_threshold = 0.5;
    const std::vector frames = {Frame(0, gt, det)};
    const ApSummary s = RouteAp(frames, config);
    ASSERT_GE(s.aos, 0.0);
    ASSERT_LE(s.aos, s.ap + 1e-15);
    ASSERT_LE(s.ap, 1.0);
    const double id = IdAp(frames, config);
    ASSERT_GE(id, 0.0);
    ASSERT_LE(id, 1.0);
  }
}

TEST(ApPropertyTest, AddingTopTruePositiveNeverHurts) {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    PrInput in;
    const int n_gt = rng.Int(2, 8);
    in.gt_mass = n_gt;
    int tps = 0;
    double max_fp = 0.0;
    for (int i = 0; i < rng.Int(0, 10); ++i) {
      PrSample s;
      s.confidence = rng.Uniform(0, 0.9);
      s.true_positive = tps < n_gt - 1 && rng.Coin();
      if (s.true_positive) ++tps;
      else max_fp = std::max(max_fp, s.confidence);
      in.samples.push_back(s);
    }
    const double before = Ap40(AccumulatePr(in));
    PrSample top;
    top.confidence = max_fp + 0.05;
    top.true_positive = true;
    in.samples.push_back(top);
    ASSERT_GE(Ap40(AccumulatePr(in)), before - 1e-15);
  }
}

TEST(ApPropertyTest, UnitWeightsReproduceUnweighted) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GroundTruthObject> gt;
    std::vector<Detection> det;
    for (int i = 0; i < rng.Int(1, 5); ++i) {
      gt.push_back(Gt(rng.RandomBox(5), i));
      det.push_back(Det(rng.RandomBox(5), rng.Uniform(0, 1)));
    }
    const MatchResult plain = MatchByIou(gt, det, 0.3, IouKind::kBev);
    MatchResult weighted = plain;
    AttachWeights(weighted, DistanceWeights{std::vector<double>(gt.size(), 1.0),
                                            std::vector<double>(det.size(), 1.0)});
    PrInput a;
    PrInput b;
    AppendFrame(a, plain, gt, det);
    AppendFrame(b, weighted, gt, det);
    ASSERT_NEAR(Ap40(AccumulatePr(a)), Ap40(AccumulatePr(b)), 1e-12);
  }
}

// Small cases against the exhaustive-cutoff oracle.
TEST(ApOracleTest, MatchesExhaustiveCutoffs) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n_gt = rng.Int(1, 5);
    const int n_det = rng.Int(0, 8);
    Eigen::MatrixXd crit(n_gt, n_det);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n_gt, n_det);
    std::vector<double> conf(n_det);
    for (int d = 0; d < n_det; ++d) {
      // Coarse confidences force ties.
      conf[d] = rng.Int(0, 4) / 4.0;
      for (int g = 0; g < n_gt; ++g) {
        crit(g, d) = rng.Int(0, 10) / 10.0;
        allowed(g, d) = rng.Coin(0.8);
      }
    }
    const MatchResult m = GreedyMatch(crit, allowed, conf, 0.5,
                                      CriterionSense::kHigherIsBetter);
    PrInput in;
    in.gt_mass = n_gt;
    std::vector<bool> tp(n_det, false);
    for (const MatchedPair& p : m.pairs) tp[p.det_index] = true;
    for (int d = 0; d < n_det; ++d) {
      PrSample s;
      s.confidence = conf[d];
      s.true_positive = tp[d];
      in.samples.push_back(s);
    }
    const double expected =
        oracle::ExhaustiveAp(crit, allowed, conf, 0.5, true, 40);
    ASSERT_NEAR(Ap40(AccumulatePr(in)), expected, 1e-9) << "trial " << trial;
  }
}

TEST(ApOracleTest, OracleExamples) {
  Eigen::MatrixXd crit(1, 1);
  crit << 0.9;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(1, 1);
  allowed << true;
  EXPECT_EQ(oracle::ExhaustiveAp(crit, allowed, {0.8}, 0.7, true), 1.0);
  crit << 0.1;
  EXPECT_EQ(oracle::ExhaustiveAp(crit, allowed, {0.8}, 0.7, true), 0.0);
}

}  // namespace
}  // namespace odeval
