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

#include "odeval/planner_metrics.h"

#include <string>

namespace odeval {
namespace {

void CheckComparable(const Trajectory& a, const Trajectory& b) {
  if (a.waypoints.empty() || a.waypoints.size() != b.waypoints.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "trajectories have " + std::to_string(a.waypoints.size()) +
                    " and " + std::to_string(b.waypoints.size()) +
                    " waypoints");
  }
  if (a.timestep != b.timestep) {
    throw Error(ErrorCode::kLengthMismatch, "trajectory timesteps differ");
  }
}

template <typename PerFrame>
double RouteMean(std::span<const FrameRecord> frames, PerFrame per_frame) {
  double sum = 0.0;
  int count = 0;
  for (const FrameRecord& f : frames) {
    if (!f.has_trajectory_pair()) continue;
    sum += per_frame(*f.traj_gt_conditioned, *f.traj_perception_conditioned);
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kNoEligibleFrames,
                "no frame carries a trajectory pair");
  }
  return sum / count;
}

}  // namespace

double FrameAde(const Trajectory& reference, const Trajectory& candidate) {
  CheckComparable(reference, candidate);
  double sum = 0.0;
  for (std::size_t i = 0; i < reference.waypoints.size(); ++i) {
    sum += (reference.waypoints[i] - candidate.waypoints[i]).norm();
  }
  return sum / static_cast<double>(reference.waypoints.size());
}

double FrameFde(const Trajectory& reference, const Trajectory& candidate) {
  CheckComparable(reference, candidate);
  return (reference.waypoints.back() - candidate.waypoints.back()).norm();
}

double RouteAde(std::span<const FrameRecord> frames) {
  return RouteMean(frames, FrameAde);
}

double RouteFde(std::span<const FrameRecord> frames) {
  return RouteMean(frames, FrameFde);
}

}  // namespace odeval
