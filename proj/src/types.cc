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

#include "odeval/types.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace odeval {
namespace {

constexpr std::array<std::pair<InfractionKind, std::string_view>, 5>
    kInfractionNames = {{
        {InfractionKind::kCollisionPedestrian, "collision_pedestrian"},
        {InfractionKind::kCollisionVehicle, "collision_vehicle"},
        {InfractionKind::kCollisionStatic, "collision_static"},
        {InfractionKind::kRedLight, "red_light"},
        {InfractionKind::kStopSign, "stop_sign"},
    }};

bool AllFinite(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return v.allFinite();
}

[[noreturn]] void FrameError(std::int64_t frame, const std::string& what) {
  throw Error(ErrorCode::kValidation,
              what + ", frame " + std::to_string(frame));
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kUndefinedRecall: return "undefined_recall";
    case ErrorCode::kNoSpeed: return "no_speed";
    case ErrorCode::kSequencing: return "sequencing";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kNoEligibleFrames: return "no_eligible_frames";
    case ErrorCode::kUnknownInfraction: return "unknown_infraction";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
    case ErrorCode::kInsufficientSamples: return "insufficient_samples";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::kConfig); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    if (ErrorCodeName(code) == name) return code;
  }
  return std::nullopt;
}

std::string_view InfractionKindName(InfractionKind kind) {
  for (const auto& [k, name] : kInfractionNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<InfractionKind> ParseInfractionKind(std::string_view name) {
  for (const auto& [k, n] : kInfractionNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void ValidateBox(const OrientedBox3d& box) {
  if (!box.center.allFinite() || !box.dims.allFinite() ||
      !std::isfinite(box.yaw)) {
    throw Error(ErrorCode::kValidation, "box has non-finite values");
  }
  if ((box.dims.array() <= 0).any()) {
    throw Error(ErrorCode::kValidation, "box dims must be positive");
  }
  constexpr double kPi = std::numbers::pi;
  if (!(box.yaw > -kPi && box.yaw <= kPi)) {
    throw Error(ErrorCode::kValidation, "box yaw not normalized");
  }
}

OrientedBox3d MakeBox(const Eigen::Vector3d& center,
                      const Eigen::Vector3d& dims, double yaw) {
  if (!std::isfinite(yaw)) {
    throw Error(ErrorCode::kValidation, "box has non-finite values");
  }
  OrientedBox3d box;
  box.center = center;
  box.dims = dims;
  box.yaw = NormalizeYaw(yaw);
  ValidateBox(box);
  return box;
}

Eigen::Vector2d Pose2d::ToLocal(const Eigen::Vector2d& world) const {
  const Eigen::Vector2d d = world - position;
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

double BevDistanceToEgo(const OrientedBox3d& box, const Pose2d& ego) {
  return (box.bev_center() - ego.position).norm();
}

void ValidateRouteLog(const RouteLog& log) {
  if (log.frames.empty()) {
    throw Error(ErrorCode::kValidation, "route has no frames");
  }
  if (!(log.route_completion >= 0.0 && log.route_completion <= 100.0)) {
    throw Error(ErrorCode::kValidation, "route_completion out of range");
  }
  if (!(log.timestep > 0.0) || !std::isfinite(log.timestep)) {
    throw Error(ErrorCode::kValidation, "timestep must be positive");
  }

  std::int64_t previous = -1;
  for (const FrameRecord& frame : log.frames) {
    const std::int64_t f = frame.frame_index;
    if (f < 0 || f <= previous) {
      FrameError(f, "frame_index not strictly increasing");
    }
    previous = f;
    if (!std::isfinite(frame.time) || !frame.ego_pose.position.allFinite() ||
        !std::isfinite(frame.ego_pose.heading)) {
      FrameError(f, "ego pose not finite");
    }
    for (const GroundTruthObject& gt : frame.gt_objects) {
      try {
        ValidateBox(gt.box);
      } catch (const Error& e) {
        FrameError(f, std::string("gt object: ") + e.what());
      }
      if (!AllFinite(gt.velocity)) FrameError(f, "gt velocity not finite");
      const double d = BevDistanceToEgo(gt.box, frame.ego_pose);
      if (!(std::abs(gt.distance_to_ego - d) <= 1e-6)) {
        FrameError(f, "distance_to_ego inconsistent with ego pose");
      }
    }
    for (const Detection& det : frame.detections) {
      try {
        ValidateBox(det.box);
      } catch (const Error& e) {
        FrameError(f, std::string("detection: ") + e.what());
      }
      if (!(det.confidence >= 0.0 && det.confidence <= 1.0)) {
        FrameError(f, "confidence out of range");
      }
      if (det.velocity && !AllFinite(*det.velocity)) {
        FrameError(f, "detection velocity not finite");
      }
    }
    if (frame.traj_gt_conditioned.has_value() !=
        frame.traj_perception_conditioned.has_value()) {
      FrameError(f, "trajectories must be both present or both absent");
    }
    for (const auto* traj :
         {&frame.traj_gt_conditioned, &frame.traj_perception_conditioned}) {
      if (!traj->has_value()) continue;
      const Trajectory& t = **traj;
      if (t.waypoints.empty()) FrameError(f, "trajectory is empty");
      if (!(t.timestep > 0.0)) FrameError(f, "trajectory timestep <= 0");
      for (const Eigen::Vector2d& w : t.waypoints) {
        if (!w.allFinite()) FrameError(f, "trajectory waypoint not finite");
      }
    }
  }

  // Object ids must not be shared by two objects in one frame; stability
  // across frames is a producer property we cannot check beyond this.
  for (const FrameRecord& frame : log.frames) {
    std::vector<std::int64_t> ids;
    ids.reserve(frame.gt_objects.size());
    for (const auto& gt : frame.gt_objects) ids.push_back(gt.object_id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      FrameError(frame.frame_index, "duplicate object_id");
    }
  }

  const std::int64_t first = log.frames.front().frame_index;
  const std::int64_t last = log.frames.back().frame_index;
  for (const InfractionEvent& event : log.infractions) {
    if (event.frame_index < first || event.frame_index > last) {
      FrameError(event.frame_index, "infraction outside route bounds");
    }
  }
}

}  // namespace odeval
