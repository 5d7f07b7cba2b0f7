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

// JSON-lines route log reader/writer.
//
// Line 1 is the route header:
//   {"route_id": str, "detector_id": str, "route_completion": num,
//    "timestep": num, "infractions": [{"kind": str, "frame_index": int}],
//    "detections_tracked": bool (optional, default false)}
// Every following non-empty line is one frame:
//   {"frame_index": int, "time": num,
//    "ego_pose": {"x": num, "y": num, "heading": num},
//    "gt_objects": [{"object_id": int, "class_id": int, "center": [x,y,z],
//                    "dims": [l,w,h], "yaw": num, "velocity": [vx,vy],
//                    "distance_to_ego": num (optional)}],
//    "detections": [{"class_id": int, "center": [..], "dims": [..],
//                    "yaw": num, "confidence": num,
//                    "velocity": [vx,vy] (optional)}],
//    "traj_gt_conditioned": {"timestep": num, "waypoints": [[x,y],..]},
//    "traj_perception_conditioned": {...}}
// Both trajectory keys are optional but must appear together.

#ifndef ODEVAL_LOG_IO_H_
#define ODEVAL_LOG_IO_H_

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "odeval/types.h"

namespace odeval {

// Parses and validates a log. `source` names the input in diagnostics.
RouteLog ParseRouteLog(std::istream& in, std::string_view source = "<stream>");

RouteLog LoadRouteLog(const std::filesystem::path& path);

// Canonical serialization: one compact JSON object per line, keys in the
// order above, shortest round-trip number formatting.
std::string SerializeRouteLog(const RouteLog& log);

void WriteRouteLog(const std::filesystem::path& path, const RouteLog& log);

}  // namespace odeval

#endif  // ODEVAL_LOG_IO_H_
