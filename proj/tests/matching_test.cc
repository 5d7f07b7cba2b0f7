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

#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "odeval/matching.h"
#include "test_util.h"

namespace odeval {
namespace {

using testing::Box;
using testing::CodeOf;
using testing::Det;
using testing::Gt;
using testing::Rng;

// A box whose BEV IoU with a 2x2 box at the origin equals `iou`, by sliding
// an equal box along x: IoU = (2 - s) / (2 + s).
OrientedBox3d ShiftedForIou(double iou) {
  const double s = 2 * (1 - iou) / (1 + iou);
  return MakeBox({s, 0, 0.5}, {2, 2, 1}, 0);
}

TEST(MatchByIouTest, SinglePair) {
  const std::vector<GroundTruthObject> gt = {
      Gt(MakeBox({0, 0, 0.5}, {2, 2, 1}, 0), 1)};
  const std::vector<Detection> det = {Det(ShiftedForIou(0.9), 0.5)};
  const MatchResult m = MatchByIou(gt, det, 0.7, IouKind::kBev);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_NEAR(m.pairs[0].criterion_value, 0.9, 1e-12);
}

TEST(MatchByIouTest, HighConfidenceBelowThresholdIsFalsePositive) {
  const std::vector<GroundTruthObject> gt = {
      Gt(MakeBox({0, 0, 0.5}, {2, 2, 1}, 0), 1)};
  const std::vector<Detection> det = {Det(ShiftedForIou(0.5), 0.9),
                                      Det(ShiftedForIou(0.95), 0.8)};
  const MatchResult m = MatchByIou(gt, det, 0.7, IouKind::kBev);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0].det_index, 1);
  EXPECT_EQ(m.unmatched_det, std::vector<int>{0});
}

TEST(MatchByIouTest, NoGroundTruth) {
  const std::vector<Detection> det = {Det(Box(0, 0), 0.9), Det(Box(5, 0), 0.8),
                                      Det(Box(9, 0), 0.7)};
  const MatchResult m = MatchByIou({}, det, 0.7, IouKind::k3d);
  EXPECT_TRUE(m.pairs.empty());
  EXPECT_EQ(m.unmatched_det.size(), 3u);
}

TEST(MatchByIouTest, ClassesNeverMatch) {
  const std::vector<GroundTruthObject> gt = {Gt(Box(0, 0), 1, 0)};
  const std::vector<Detection> det = {Det(Box(0, 0), 0.9, 1)};
  EXPECT_TRUE(MatchByIou(gt, det, 0.5, IouKind::kBev).pairs.empty());
}

TEST(MatchByIouTest, RejectsBadThreshold) {
  EXPECT_EQ(CodeOf([] { MatchByIou({}, {}, 0.0, IouKind::kBev); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { MatchByIou({}, {}, 1.0, IouKind::kBev); }),
            ErrorCode::kInvalidArgument);
}

TEST(MatchByCenterDistanceTest, Examples) {
  const std::vector<GroundTruthObject> lone = {Gt(Box(0, 0), 1)};
  EXPECT_EQ(
      MatchByCenterDistance(lone, std::vector{Det(Box(0.5, 0), 0.9)}, 1.0)
          .pairs.size(),
      1u);
  EXPECT_TRUE(
      MatchByCenterDistance(lone, std::vector{Det(Box(1.5, 0), 0.9)}, 1.0)
          .pairs.empty());

  const std::vector<GroundTruthObject> two = {Gt(Box(0.8, 0), 1),
                                              Gt(Box(0, 0.3), 2)};
  const MatchResult m =
      MatchByCenterDistance(two, std::vector{Det(Box(0, 0), 0.9)}, 1.0);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0].gt_index, 1);
  EXPECT_EQ(CodeOf([&] { MatchByCenterDistance(two, {}, 0.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(InverseDistanceWeightTest, Examples) {
  EXPECT_NEAR(InverseDistanceWeight(10.0, 1.0), 0.1, 1e-15);
  EXPECT_EQ(InverseDistanceWeight(0.2, 1.0), 1.0);
  const std::vector<GroundTruthObject> gt = {Gt(Box(5, 0), 1),
                                             Gt(Box(0, 50), 2)};
  const DistanceWeights w = InverseDistanceWeights(gt, {}, Pose2d{}, 1.0);
  EXPECT_NEAR(w.gt[0] / w.gt[1], 10.0, 1e-12);
}

// Random frames: one-to-one, class-consistent, threshold-respecting, and
// monotone in the threshold.
TEST(GreedyMatchTest, Properties) {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<GroundTruthObject> gt;
    std::vector<Detection> det;
    const int n_gt = rng.Int(0, 6);
    const int n_det = rng.Int(0, 8);
    for (int i = 0; i < n_gt; ++i) {
      gt.push_back(Gt(rng.RandomBox(4), i, rng.Int(0, 1)));
    }
    for (int i = 0; i < n_det; ++i) {
      det.push_back(Det(rng.RandomBox(4), rng.Uniform(0, 1), rng.Int(0, 1)));
    }
    std::size_t previous = SIZE_MAX;
    for (double t : {0.05, 0.2, 0.4, 0.6, 0.8}) {
      const MatchResult m = MatchByIou(gt, det, t, IouKind::kBev);
      std::set<int> gs;
      std::set<int> ds;
      for (const MatchedPair& p : m.pairs) {
        ASSERT_TRUE(gs.insert(p.gt_index).second);
        ASSERT_TRUE(ds.insert(p.det_index).second);
        ASSERT_EQ(gt[p.gt_index].class_id, det[p.det_index].class_id);
        ASSERT_GE(p.criterion_value, t);
      }
      ASSERT_EQ(m.pairs.size() + m.unmatched_gt.size(), gt.size());
      ASSERT_EQ(m.pairs.size() + m.unmatched_det.size(), det.size());
      ASSERT_LE(m.pairs.size(), previous);
      previous = m.pairs.size();
    }
  }
}

}  // namespace
}  // namespace odeval
