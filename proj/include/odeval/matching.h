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

// Per-frame detection-to-ground-truth assignment.
//
// Matching is greedy in descending detection confidence: each detection takes
// the best still-unmatched ground truth object of the same class that passes
// the threshold. Ties on confidence go to the lower detection index, ties on
// the criterion value to the lower ground truth index.

#ifndef ODEVAL_MATCHING_H_
#define ODEVAL_MATCHING_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "odeval/geometry.h"
#include "odeval/types.h"

namespace odeval {

struct MatchedPair {
  int gt_index = 0;
  int det_index = 0;
  // IoU or center distance, depending on the criterion used.
  double criterion_value = 0.0;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_det;
  // One entry per input object; 1.0 unless inverse-distance weighting is
  // attached.
  std::vector<double> gt_weights;
  std::vector<double> det_weights;
};

// Criterion matrix convention: rows are ground truth, columns detections.
// Entries for cross-class pairs must be marked invalid by the caller through
// `allowed`.
enum class CriterionSense { kHigherIsBetter, kLowerIsBetter };

// Generic greedy matcher behind both public criteria.
MatchResult GreedyMatch(const Eigen::MatrixXd& criterion,
                        const Eigen::Matrix<bool, Eigen::Dynamic,
                                            Eigen::Dynamic>& allowed,
                        std::span<const double> confidences, double threshold,
                        CriterionSense sense);

MatchResult MatchByIou(std::span<const GroundTruthObject> gt,
                       std::span<const Detection> det, double iou_threshold,
                       IouKind kind);

MatchResult MatchByCenterDistance(std::span<const GroundTruthObject> gt,
                                  std::span<const Detection> det,
                                  double dist_threshold);

struct DistanceWeights {
  std::vector<double> gt;
  std::vector<double> det;
};

// w = 1 / max(d, d_min), d measured in BEV from the ego position.
double InverseDistanceWeight(double distance, double d_min);

DistanceWeights InverseDistanceWeights(std::span<const GroundTruthObject> gt,
                                       std::span<const Detection> det,
                                       const Pose2d& ego, double d_min);

void AttachWeights(MatchResult& result, const DistanceWeights& weights);

}  // namespace odeval

#endif  // ODEVAL_MATCHING_H_
