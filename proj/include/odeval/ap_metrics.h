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

// Precision/recall accumulation and the AP family (AP, AOS, ID-AP).

#ifndef ODEVAL_AP_METRICS_H_
#define ODEVAL_AP_METRICS_H_

#include <map>
#include <span>
#include <vector>

#include "odeval/geometry.h"
#include "odeval/matching.h"
#include "odeval/types.h"

namespace odeval {

// Recall levels are compared with this slack so weighted recall sums that
// land a rounding error below a level still reach it.
inline constexpr double kRecallLevelTolerance = 1e-12;

// One detection as seen by the PR sweep.
struct PrSample {
  double confidence = 0.0;
  bool true_positive = false;
  // TP: weight of the matched ground truth. FP: weight of the detection.
  double mass = 1.0;
  // KITTI orientation similarity (1 + cos dtheta) / 2; 1 for FPs (unused).
  double orientation_similarity = 1.0;
};

struct PrInput {
  std::vector<PrSample> samples;
  double gt_mass = 0.0;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
  // Precision with TP mass replaced by orientation-similarity mass.
  double orientation_precision = 0.0;
  double confidence = 0.0;
};

struct PrCurve {
  // One point per distinct confidence, descending confidence.
  std::vector<PrPoint> points;
  double gt_mass = 0.0;
  double det_mass = 0.0;
};

// Appends one frame's detections and ground truth to `input`. Matched
// detections become TPs carrying their ground truth's weight.
void AppendFrame(PrInput& input, const MatchResult& match,
                 std::span<const GroundTruthObject> gt,
                 std::span<const Detection> det);

// Same, keeping one PR input per class.
void AppendFrameByClass(std::map<ClassId, PrInput>& per_class,
                        const MatchResult& match,
                        std::span<const GroundTruthObject> gt,
                        std::span<const Detection> det);

// Throws kUndefinedRecall when the ground truth mass is zero.
PrCurve AccumulatePr(const PrInput& input);

// Mean interpolated precision over recall levels k/levels, k = 1..levels.
double InterpolatedAp(const PrCurve& curve, int levels = 40);
double InterpolatedAos(const PrCurve& curve, int levels = 40);

inline double Ap40(const PrCurve& curve) { return InterpolatedAp(curve, 40); }
inline double Aos40(const PrCurve& curve) {
  return InterpolatedAos(curve, 40);
}

struct ApConfig {
  double iou_threshold = 0.7;
  IouKind iou_kind = IouKind::k3d;
  int recall_levels = 40;
  double d_min = 1.0;
};

struct ApSummary {
  double ap = 0.0;
  double aos = 0.0;
};

// Per-class PR inputs for a whole route, IoU criterion.
std::map<ClassId, PrInput> CollectIouPr(std::span<const FrameRecord> frames,
                                        const ApConfig& config,
                                        bool inverse_distance);

// Unweighted mean over classes with ground truth mass; classes without
// ground truth are skipped. Throws kUndefinedRecall if no class qualifies.
ApSummary MeanOverClasses(const std::map<ClassId, PrInput>& per_class,
                          int levels);

ApSummary RouteAp(std::span<const FrameRecord> frames, const ApConfig& config);
double IdAp(std::span<const FrameRecord> frames, const ApConfig& config);

}  // namespace odeval

#endif  // ODEVAL_AP_METRICS_H_
