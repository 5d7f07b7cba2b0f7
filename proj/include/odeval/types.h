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

// Shared data model for evaluation logs.
//
// Frames are right-handed: x forward, y left, z up, yaw counter-clockwise
// from +x. Boxes and the ego pose are expressed in the route's world frame.
// Planner trajectories are expressed in the ego frame at the frame's
// timestamp.

#ifndef ODEVAL_TYPES_H_
#define ODEVAL_TYPES_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "odeval/error.h"

namespace odeval {

// Wraps `theta` into (-pi, pi]. Throws kInvalidArgument on non-finite input.
template <typename Scalar>
Scalar NormalizeYaw(Scalar theta) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorCode::kInvalidArgument, "yaw is not finite");
  }
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  // remainder() lands in [-pi, pi]; only -pi needs folding.
  Scalar r = std::remainder(theta, Scalar(2) * kPi);
  if (r <= -kPi) r += Scalar(2) * kPi;
  return r;
}

template <typename Scalar>
struct OrientedBox3 {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

  Vector3 center = Vector3::Zero();
  // (length, width, height), all strictly positive.
  Vector3 dims = Vector3::Ones();
  Scalar yaw = 0;

  Vector2 bev_center() const { return center.template head<2>(); }
  Scalar z_min() const { return center.z() - dims.z() / 2; }
  Scalar z_max() const { return center.z() + dims.z() / 2; }
  Scalar volume() const { return dims.prod(); }

  bool operator==(const OrientedBox3& other) const {
    return center == other.center && dims == other.dims && yaw == other.yaw;
  }
};

using OrientedBox3d = OrientedBox3<double>;

// Builds a box with yaw normalized; throws kValidation on non-finite values
// or non-positive dims.
OrientedBox3d MakeBox(const Eigen::Vector3d& center,
                      const Eigen::Vector3d& dims, double yaw);

// Throws kValidation if the box violates its invariants.
void ValidateBox(const OrientedBox3d& box);

using ClassId = int;

struct Detection {
  OrientedBox3d box;
  double confidence = 1.0;
  ClassId class_id = 0;
  // BEV velocity, m/s. Absent when the detector provides none; the tracker
  // fills it in.
  std::optional<Eigen::Vector2d> velocity;
};

struct GroundTruthObject {
  OrientedBox3d box;
  ClassId class_id = 0;
  std::int64_t object_id = 0;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  double distance_to_ego = 0.0;
};

struct Pose2d {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;

  // World point expressed in this pose's frame.
  Eigen::Vector2d ToLocal(const Eigen::Vector2d& world) const;
};

struct Trajectory {
  std::vector<Eigen::Vector2d> waypoints;
  double timestep = 0.5;
};

struct FrameRecord {
  std::int64_t frame_index = 0;
  double time = 0.0;
  Pose2d ego_pose;
  std::vector<GroundTruthObject> gt_objects;
  std::vector<Detection> detections;
  std::optional<Trajectory> traj_gt_conditioned;
  std::optional<Trajectory> traj_perception_conditioned;

  bool has_trajectory_pair() const {
    return traj_gt_conditioned.has_value() &&
           traj_perception_conditioned.has_value();
  }
};

enum class InfractionKind {
  kCollisionPedestrian,
  kCollisionVehicle,
  kCollisionStatic,
  kRedLight,
  kStopSign,
};

std::string_view InfractionKindName(InfractionKind kind);
std::optional<InfractionKind> ParseInfractionKind(std::string_view name);

struct InfractionEvent {
  InfractionKind kind = InfractionKind::kCollisionVehicle;
  std::int64_t frame_index = 0;
};

struct RouteLog {
  std::string route_id;
  std::string detector_id;
  double route_completion = 100.0;
  std::vector<InfractionEvent> infractions;
  double timestep = 0.1;
  // True when detections are already the tracked operating set (gated,
  // suppressed, velocities attached); false for raw detector output.
  bool detections_tracked = false;
  std::vector<FrameRecord> frames;
};

// BEV distance from the ego position to a box center.
double BevDistanceToEgo(const OrientedBox3d& box, const Pose2d& ego);

// Throws kValidation naming the offending frame when an invariant fails.
void ValidateRouteLog(const RouteLog& log);

}  // namespace odeval

#endif  // ODEVAL_TYPES_H_
