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

#include "odeval/nds_metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "odeval/ap_metrics.h"
#include "odeval/geometry.h"
#include "odeval/matching.h"

namespace odeval {
namespace {

constexpr double kPi = std::numbers::pi;

TpErrors WorstCase(const NdsConfig& config) {
  TpErrors e;
  e.ate = config.threshold_m;
  e.ase = 1.0;
  e.aoe = kPi;
  e.ave = config.v_cap;
  e.no_tp = true;
  e.no_velocity = true;
  return e;
}

}  // namespace

TpPairError MeasurePair(const GroundTruthObject& gt, const Detection& det) {
  TpPairError e;
  e.ate = CenterDistanceBev(gt.box, det.box);
  e.ase = 1.0 - AlignedIou(gt.box, det.box);
  e.aoe = YawDelta(gt.box.yaw, det.box.yaw);
  if (det.velocity) e.ave = (*det.velocity - gt.velocity).norm();
  e.confidence = det.confidence;
  return e;
}

TpErrors TpErrorMeans(std::span<const TpPairError> pairs,
                      const NdsConfig& config) {
  if (pairs.empty()) return WorstCase(config);
  TpErrors e;
  double mass = 0.0;
  double velocity_mass = 0.0;
  for (const TpPairError& p : pairs) {
    e.ate += p.weight * p.ate;
    e.ase += p.weight * p.ase;
    e.aoe += p.weight * p.aoe;
    mass += p.weight;
    if (p.ave) {
      e.ave += p.weight * *p.ave;
      velocity_mass += p.weight;
    }
  }
  e.ate /= mass;
  e.ase /= mass;
  e.aoe /= mass;
  if (velocity_mass > 0.0) {
    e.ave /= velocity_mass;
  } else {
    e.ave = config.v_cap;
    e.no_velocity = true;
  }
  e.tp_count = static_cast<int>(pairs.size());
  return e;
}

TpErrors TpErrorRecallSweep(std::span<const TpPairError> pairs,
                            const NdsConfig& config) {
  constexpr int kFirstLevel = 10;
  constexpr int kLevels = 100;
  if (pairs.empty() ||
      pairs.back().recall + kRecallLevelTolerance < kFirstLevel / 100.0) {
    return WorstCase(config);
  }
  // Cumulative sums along the confidence-sorted TPs.
  const std::size_t n = pairs.size();
  std::vector<std::array<double, 4>> cum(n);
  std::vector<double> mass(n), velocity_mass(n);
  std::array<double, 4> run = {0, 0, 0, 0};
  double m = 0.0, vm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TpPairError& p = pairs[i];
    run[0] += p.weight * p.ate;
    run[1] += p.weight * p.ase;
    run[2] += p.weight * p.aoe;
    m += p.weight;
    if (p.ave) {
      run[3] += p.weight * *p.ave;
      vm += p.weight;
    }
    cum[i] = run;
    mass[i] = m;
    velocity_mass[i] = vm;
  }

  TpErrors e;
  int counted = 0;
  int velocity_counted = 0;
  std::size_t cursor = 0;
  for (int k = kFirstLevel; k <= kLevels; ++k) {
    const double level = k / 100.0;
    while (cursor < n && pairs[cursor].recall + kRecallLevelTolerance < level) {
      ++cursor;
    }
    if (cursor == n) break;
    e.ate += cum[cursor][0] / mass[cursor];
    e.ase += cum[cursor][1] / mass[cursor];
    e.aoe += cum[cursor][2] / mass[cursor];
    ++counted;
    if (velocity_mass[cursor] > 0.0) {
      e.ave += cum[cursor][3] / velocity_mass[cursor];
      ++velocity_counted;
    }
  }
  e.ate /= counted;
  e.ase /= counted;
  e.aoe /= counted;
  if (velocity_counted > 0) {
    e.ave /= velocity_counted;
  } else {
    e.ave = config.v_cap;
    e.no_velocity = true;
  }
  e.tp_count = static_cast<int>(n);
  return e;
}

std::array<double, 4> NormalizedErrors(const TpErrors& errors,
                                       const NdsConfig& config) {
  return {errors.ate / config.threshold_m, errors.ase, errors.aoe / kPi,
          errors.ave / config.v_cap};
}

double Nds(double map_cd, const TpErrors& errors, const NdsConfig& config) {
  double total_weight = 0.0;
  for (double w : config.tp_weights) {
    if (w < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "TP weights must be >= 0");
    }
    total_weight += w;
  }
  if (total_weight == 0.0) return map_cd;
  const auto x = NormalizedErrors(errors, config);
  double tp_score = 0.0;
  for (int i = 0; i < 4; ++i) {
    tp_score += config.tp_weights[i] * (1.0 - std::min(1.0, x[i]));
  }
  const double nds =
      (total_weight * map_cd + tp_score) / (2.0 * total_weight);
  return std::clamp(nds, 0.0, 1.0);
}

NdsSummary RouteNds(std::span<const FrameRecord> frames,
                    const NdsConfig& config, bool inverse_distance) {
  std::map<ClassId, PrInput> per_class;
  std::vector<TpPairError> pairs;
  double gt_mass = 0.0;
  for (const FrameRecord& frame : frames) {
    MatchResult match = MatchByCenterDistance(
        frame.gt_objects, frame.detections, config.threshold_m);
    if (inverse_distance) {
      AttachWeights(match,
                    InverseDistanceWeights(frame.gt_objects, frame.detections,
                                           frame.ego_pose, config.d_min));
    }
    AppendFrameByClass(per_class, match, frame.gt_objects, frame.detections);
    for (const MatchedPair& p : match.pairs) {
      TpPairError e = MeasurePair(frame.gt_objects[p.gt_index],
                                  frame.detections[p.det_index]);
      e.weight = match.gt_weights[p.gt_index];
      pairs.push_back(e);
    }
    for (double w : match.gt_weights) gt_mass += w;
  }

  NdsSummary out;
  out.cd_map = MeanOverClasses(per_class, config.recall_levels).ap;
  if (config.recall_sweep_mode) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const TpPairError& a, const TpPairError& b) {
                       return a.confidence > b.confidence;
                     });
    double tp_mass = 0.0;
    for (TpPairError& p : pairs) {
      tp_mass += p.weight;
      p.recall = tp_mass / gt_mass;
    }
    out.errors = TpErrorRecallSweep(pairs, config);
  } else {
    out.errors = TpErrorMeans(pairs, config);
  }
  out.nds = Nds(out.cd_map, out.errors, config);
  return out;
}

double CenterDistanceAp(std::span<const FrameRecord> frames,
                        const NdsConfig& config) {
  return RouteNds(frames, config).cd_map;
}

double IdNds(std::span<const FrameRecord> frames, const NdsConfig& config) {
  return RouteNds(frames, config, true).nds;
}

}  // namespace odeval
