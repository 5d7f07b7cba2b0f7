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

// nuScenes-style detection score at a single center-distance threshold,
// without the attribute error term.

#ifndef ODEVAL_NDS_METRICS_H_
#define ODEVAL_NDS_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "odeval/types.h"

namespace odeval {

struct NdsConfig {
  double threshold_m = 1.0;
  // AVE is normalized by this speed before clipping.
  double v_cap = 10.0;
  // ATE, ASE, AOE, AVE. Zero disables a term; the rest are renormalized so
  // the TP terms together always weigh as much as the mAP term.
  std::array<double, 4> tp_weights = {1.0, 1.0, 1.0, 1.0};
  // Average cumulative TP errors over recall >= 10% instead of taking the
  // plain mean over the operating set.
  bool recall_sweep_mode = false;
  int recall_levels = 40;
  double d_min = 1.0;
};

struct TpErrors {
  double ate = 0.0;  // m
  double ase = 0.0;  // 1 - aligned IoU
  double aoe = 0.0;  // rad
  double ave = 0.0;  // m/s
  // Set when no TP pair exists; every field then holds its worst-case cap.
  bool no_tp = false;
  // Set when TPs exist but none carries velocity on both sides.
  bool no_velocity = false;
  int tp_count = 0;
};

// Errors of one matched pair. `ave` is absent when either side lacks a
// velocity.
struct TpPairError {
  double ate = 0.0;
  double ase = 0.0;
  double aoe = 0.0;
  std::optional<double> ave;
  double weight = 1.0;
  double confidence = 0.0;
  // Recall reached once this TP is admitted; used by the sweep mode only.
  double recall = 0.0;
};

TpPairError MeasurePair(const GroundTruthObject& gt, const Detection& det);

// Weighted means over `pairs` (plain means for unit weights).
TpErrors TpErrorMeans(std::span<const TpPairError> pairs,
                      const NdsConfig& config);

// Errors of `pairs` averaged over the confidence sweep: each recall level
// r in {0.10, 0.11, .., 1.00} reached takes the cumulative mean up to the
// first TP achieving it. `pairs` must be sorted by descending confidence.
TpErrors TpErrorRecallSweep(std::span<const TpPairError> pairs,
                            const NdsConfig& config);

// (ATE / threshold, ASE, AOE / pi, AVE / v_cap).
std::array<double, 4> NormalizedErrors(const TpErrors& errors,
                                       const NdsConfig& config);

// (W * map + sum_i w_i (1 - min(1, x_i))) / (2W), W = sum_i w_i; map when
// W = 0.
double Nds(double map_cd, const TpErrors& errors, const NdsConfig& config);

struct NdsSummary {
  double cd_map = 0.0;
  TpErrors errors;
  double nds = 0.0;
};

// Center-distance mAP, TP errors and NDS over a route. With
// `inverse_distance` the PR sweep and the TP means use inverse-distance
// weights. Throws kUndefinedRecall when the route has no ground truth.
NdsSummary RouteNds(std::span<const FrameRecord> frames,
                    const NdsConfig& config, bool inverse_distance = false);

double CenterDistanceAp(std::span<const FrameRecord> frames,
                        const NdsConfig& config);
double IdNds(std::span<const FrameRecord> frames, const NdsConfig& config);

}  // namespace odeval

#endif  // ODEVAL_NDS_METRICS_H_
