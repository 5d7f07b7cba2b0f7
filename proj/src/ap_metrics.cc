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

#include "odeval/ap_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace odeval {
namespace {

template <typename PrecisionOf>
double Interpolate(const PrCurve& curve, int levels, PrecisionOf precision_of) {
  if (levels <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "recall levels must be positive");
  }
  // Max-to-the-right envelope over the points.
  const std::size_t n = curve.points.size();
  std::vector<double> envelope(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running = std::max(running, precision_of(curve.points[i]));
    envelope[i] = running;
  }
  // Points are in non-decreasing recall, so a forward cursor finds the
  // first point reaching each level.
  double sum = 0.0;
  std::size_t cursor = 0;
  for (int k = 1; k <= levels; ++k) {
    const double level = static_cast<double>(k) / levels;
    while (cursor < n &&
           curve.points[cursor].recall + kRecallLevelTolerance < level) {
      ++cursor;
    }
    if (cursor == n) break;
    sum += envelope[cursor];
  }
  return sum / levels;
}

double WeightOf(const std::vector<double>& weights, int index) {
  return weights.empty() ? 1.0 : weights[index];
}

// Matching never crosses classes, so restricting a frame's result to one
// class's indices is consistent with the joint matching.
void AppendSubset(PrInput& input, const MatchResult& match,
                  std::span<const GroundTruthObject> gt,
                  std::span<const Detection> det, std::span<const int> gt_idx,
                  std::span<const int> det_idx) {
  for (int g : gt_idx) input.gt_mass += WeightOf(match.gt_weights, g);
  std::vector<int> gt_of_det(det.size(), -1);
  for (const MatchedPair& p : match.pairs) gt_of_det[p.det_index] = p.gt_index;
  for (int d : det_idx) {
    PrSample s;
    s.confidence = det[d].confidence;
    const int g = gt_of_det[d];
    if (g >= 0) {
      s.true_positive = true;
      s.mass = WeightOf(match.gt_weights, g);
      s.orientation_similarity =
          (1.0 + std::cos(YawDelta(gt[g].box.yaw, det[d].box.yaw))) / 2.0;
    } else {
      s.mass = WeightOf(match.det_weights, d);
    }
    input.samples.push_back(s);
  }
}

}  // namespace

void AppendFrame(PrInput& input, const MatchResult& match,
                 std::span<const GroundTruthObject> gt,
                 std::span<const Detection> det) {
  std::vector<int> all_gt(gt.size());
  std::vector<int> all_det(det.size());
  std::iota(all_gt.begin(), all_gt.end(), 0);
  std::iota(all_det.begin(), all_det.end(), 0);
  AppendSubset(input, match, gt, det, all_gt, all_det);
}

void AppendFrameByClass(std::map<ClassId, PrInput>& per_class,
                        const MatchResult& match,
                        std::span<const GroundTruthObject> gt,
                        std::span<const Detection> det) {
  std::map<ClassId, std::pair<std::vector<int>, std::vector<int>>> members;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    members[gt[g].class_id].first.push_back(static_cast<int>(g));
  }
  for (std::size_t d = 0; d < det.size(); ++d) {
    members[det[d].class_id].second.push_back(static_cast<int>(d));
  }
  for (const auto& [cls, idx] : members) {
    AppendSubset(per_class[cls], match, gt, det, idx.first, idx.second);
  }
}

PrCurve AccumulatePr(const PrInput& input) {
  if (!(input.gt_mass > 0.0)) {
    throw Error(ErrorCode::kUndefinedRecall,
                "recall undefined: no ground truth mass");
  }
  std::vector<PrSample> sorted = input.samples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PrSample& a, const PrSample& b) {
                     return a.confidence > b.confidence;
                   });
  PrCurve curve;
  curve.gt_mass = input.gt_mass;
  double tp = 0.0;
  double fp = 0.0;
  double similarity = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const PrSample& s = sorted[i];
    if (s.true_positive) {
      tp += s.mass;
      similarity += s.mass * s.orientation_similarity;
    } else {
      fp += s.mass;
    }
    // A confidence cutoff admits every detection at that confidence, so
    // only the last sample of a tie group produces a point.
    const bool group_end =
        i + 1 == sorted.size() || sorted[i + 1].confidence != s.confidence;
    if (!group_end) continue;
    PrPoint p;
    p.confidence = s.confidence;
    p.recall = std::min(1.0, tp / input.gt_mass);
    const double total = tp + fp;
    p.precision = total > 0.0 ? tp / total : 0.0;
    p.orientation_precision = total > 0.0 ? similarity / total : 0.0;
    curve.points.push_back(p);
  }
  curve.det_mass = tp + fp;
  return curve;
}

double InterpolatedAp(const PrCurve& curve, int levels) {
  return Interpolate(curve, levels,
                     [](const PrPoint& p) { return p.precision; });
}

double InterpolatedAos(const PrCurve& curve, int levels) {
  return Interpolate(curve, levels,
                     [](const PrPoint& p) { return p.orientation_precision; });
}

std::map<ClassId, PrInput> CollectIouPr(std::span<const FrameRecord> frames,
                                        const ApConfig& config,
                                        bool inverse_distance) {
  std::map<ClassId, PrInput> per_class;
  for (const FrameRecord& frame : frames) {
    MatchResult match = MatchByIou(frame.gt_objects, frame.detections,
                                   config.iou_threshold, config.iou_kind);
    if (inverse_distance) {
      AttachWeights(match,
                    InverseDistanceWeights(frame.gt_objects, frame.detections,
                                           frame.ego_pose, config.d_min));
    }
    AppendFrameByClass(per_class, match, frame.gt_objects, frame.detections);
  }
  return per_class;
}

ApSummary MeanOverClasses(const std::map<ClassId, PrInput>& per_class,
                          int levels) {
  ApSummary sum;
  int classes = 0;
  for (const auto& [cls, input] : per_class) {
    if (!(input.gt_mass > 0.0)) continue;
    const PrCurve curve = AccumulatePr(input);
    sum.ap += InterpolatedAp(curve, levels);
    sum.aos += InterpolatedAos(curve, levels);
    ++classes;
  }
  if (classes == 0) {
    throw Error(ErrorCode::kUndefinedRecall,
                "recall undefined: no class has ground truth");
  }
  sum.ap /= classes;
  sum.aos /= classes;
  return sum;
}

ApSummary RouteAp(std::span<const FrameRecord> frames, const ApConfig& config) {
  return MeanOverClasses(CollectIouPr(frames, config, false),
                         config.recall_levels);
}

double IdAp(std::span<const FrameRecord> frames, const ApConfig& config) {
  return MeanOverClasses(CollectIouPr(frames, config, true),
                         config.recall_levels)
      .ap;
}

}  // namespace odeval
