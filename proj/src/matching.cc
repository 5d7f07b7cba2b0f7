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

#include "odeval/matching.h"

#include <algorithm>
#include <numeric>

namespace odeval {
namespace {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

BoolMatrix SameClass(std::span<const GroundTruthObject> gt,
                     std::span<const Detection> det) {
  BoolMatrix allowed(gt.size(), det.size());
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t d = 0; d < det.size(); ++d) {
      allowed(g, d) = gt[g].class_id == det[d].class_id;
    }
  }
  return allowed;
}

std::vector<double> Confidences(std::span<const Detection> det) {
  std::vector<double> out;
  out.reserve(det.size());
  for (const Detection& d : det) out.push_back(d.confidence);
  return out;
}

}  // namespace

MatchResult GreedyMatch(const Eigen::MatrixXd& criterion,
                        const BoolMatrix& allowed,
                        std::span<const double> confidences, double threshold,
                        CriterionSense sense) {
  const int n_gt = static_cast<int>(criterion.rows());
  const int n_det = static_cast<int>(criterion.cols());
  MatchResult result;
  result.gt_weights.assign(n_gt, 1.0);
  result.det_weights.assign(n_det, 1.0);

  std::vector<int> order(n_det);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return confidences[a] > confidences[b];
  });

  const bool higher = sense == CriterionSense::kHigherIsBetter;
  std::vector<bool> gt_taken(n_gt, false);
  std::vector<bool> det_taken(n_det, false);
  for (int d : order) {
    int best = -1;
    double best_value = 0.0;
    for (int g = 0; g < n_gt; ++g) {
      if (gt_taken[g] || !allowed(g, d)) continue;
      const double v = criterion(g, d);
      const bool passes = higher ? v >= threshold : v <= threshold;
      if (!passes) continue;
      const bool better = best < 0 || (higher ? v > best_value : v < best_value);
      if (better) {
        best = g;
        best_value = v;
      }
    }
    if (best >= 0) {
      gt_taken[best] = true;
      det_taken[d] = true;
      result.pairs.push_back({best, d, best_value});
    }
  }
  for (int g = 0; g < n_gt; ++g) {
    if (!gt_taken[g]) result.unmatched_gt.push_back(g);
  }
  for (int d = 0; d < n_det; ++d) {
    if (!det_taken[d]) result.unmatched_det.push_back(d);
  }
  return result;
}

MatchResult MatchByIou(std::span<const GroundTruthObject> gt,
                       std::span<const Detection> det, double iou_threshold,
                       IouKind kind) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "iou_threshold must lie in (0, 1)");
  }
  const BoolMatrix allowed = SameClass(gt, det);
  Eigen::MatrixXd iou = Eigen::MatrixXd::Zero(gt.size(), det.size());
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t d = 0; d < det.size(); ++d) {
      if (allowed(g, d)) iou(g, d) = Iou(gt[g].box, det[d].box, kind);
    }
  }
  const auto conf = Confidences(det);
  return GreedyMatch(iou, allowed, conf, iou_threshold,
                     CriterionSense::kHigherIsBetter);
}

MatchResult MatchByCenterDistance(std::span<const GroundTruthObject> gt,
                                  std::span<const Detection> det,
                                  double dist_threshold) {
  if (!(dist_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "distance threshold must be positive");
  }
  const BoolMatrix allowed = SameClass(gt, det);
  Eigen::MatrixXd dist(gt.size(), det.size());
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t d = 0; d < det.size(); ++d) {
      dist(g, d) = CenterDistanceBev(gt[g].box, det[d].box);
    }
  }
  const auto conf = Confidences(det);
  return GreedyMatch(dist, allowed, conf, dist_threshold,
                     CriterionSense::kLowerIsBetter);
}

double InverseDistanceWeight(double distance, double d_min) {
  return 1.0 / std::max(distance, d_min);
}

DistanceWeights InverseDistanceWeights(std::span<const GroundTruthObject> gt,
                                       std::span<const Detection> det,
                                       const Pose2d& ego, double d_min) {
  if (!(d_min > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "d_min must be positive");
  }
  DistanceWeights w;
  w.gt.reserve(gt.size());
  w.det.reserve(det.size());
  for (const GroundTruthObject& g : gt) {
    w.gt.push_back(InverseDistanceWeight(BevDistanceToEgo(g.box, ego), d_min));
  }
  for (const Detection& d : det) {
    w.det.push_back(InverseDistanceWeight(BevDistanceToEgo(d.box, ego), d_min));
  }
  return w;
}

void AttachWeights(MatchResult& result, const DistanceWeights& weights) {
  result.gt_weights = weights.gt;
  result.det_weights = weights.det;
}

}  // namespace odeval
