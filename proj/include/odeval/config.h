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

// Run configuration. Files are "key = value" lines; '#' starts a comment.
//
//   tracker.conf_threshold  tracker.nms_iou  tracker.confirm_frames
//   tracker.gate_m          ap.iou_threshold ap.iou_kind (bev|3d)
//   ap.recall_points        id.d_min         nds.threshold_m  nds.v_cap
//   nds.tp_weights (4 comma-separated)       nds.recall_sweep_mode
//   eval.max_range_m (<= 0 disables)         penalty.<infraction kind>
//   synth.routes synth.frames synth.density synth.seed synth.timestep
//   synth.sensor_range synth.route_fraction synth.ladder
//   planner.target_speed planner.corridor_width planner.corridor_range
//   planner.horizon planner.waypoint_dt planner.comfort_decel
//   planner.standoff
//   model.<id>.<field>  (any NoiseModel field; replaces the ladder)

#ifndef ODEVAL_CONFIG_H_
#define ODEVAL_CONFIG_H_

#include <filesystem>
#include <string_view>
#include <vector>

#include "odeval/ap_metrics.h"
#include "odeval/driving_eval.h"
#include "odeval/nds_metrics.h"
#include "odeval/synth.h"
#include "odeval/tracking.h"

namespace odeval {

struct EvalConfig {
  TrackerConfig tracker;
  ApConfig ap;
  NdsConfig nds;
  PenaltyMap penalties = DefaultPenalties();
  double max_range_m = 50.0;
};

struct StudyConfig {
  ScenarioConfig scenario;
  PlannerConfig planner;
  int ladder_size = 16;
  // Explicit models; empty means the severity ladder.
  std::vector<NoiseModel> models;

  std::vector<NoiseModel> ResolvedModels() const;
};

struct Config {
  EvalConfig eval;
  StudyConfig study;
};

// Throws kConfig naming the key (and line) for unknown keys or bad values.
Config ParseConfig(std::string_view text, std::string_view source = "<config>");
Config LoadConfig(const std::filesystem::path& path);

}  // namespace odeval

#endif  // ODEVAL_CONFIG_H_
