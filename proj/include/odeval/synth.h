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

// Desk-scale scenario generator, detector noise models, a rule-based
// surrogate planner and a closed-loop rollout that turns scripted traffic
// plus noisy detections into complete route logs.
//
// Scenes are laid out along a straight lane: the ego starts at the origin
// heading +x, lanes are 3.5 m wide, and scripted actors are
//   * lead vehicles in the ego lane that later leave it sideways,
//   * pedestrians crossing the lane, timed to reach the lane center when an
//     unobstructed ego would, and
//   * vehicles in the adjacent lanes, parked or driving.

#ifndef ODEVAL_SYNTH_H_
#define ODEVAL_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "odeval/tracking.h"
#include "odeval/types.h"

namespace odeval {

inline constexpr ClassId kVehicleClass = 0;
inline constexpr ClassId kPedestrianClass = 1;

struct NoiseModel {
  std::string id = "detector";
  double drop_base = 0.0;       // probability
  double drop_per_meter = 0.0;  // probability per meter of range
  double sigma_xy = 0.0;        // m
  double sigma_yaw = 0.0;       // rad
  double sigma_dims = 0.0;      // relative
  double fp_rate = 0.0;         // expected false positives per frame
  double conf_noise = 0.0;      // std of confidence jitter
  // When set, detections carry velocity (GT velocity plus noise); otherwise
  // the tracker estimates it.
  bool detector_velocity = false;
  double sigma_velocity = 0.0;  // m/s
  std::uint64_t seed = 0;
};

// Throws kConfig naming the field on a violated range.
void ValidateNoiseModel(const NoiseModel& model);

// Model `rank` (0-based) of `count` evenly spaced severities; rank 0 is the
// mildest.
NoiseModel SeverityLadder(int rank, int count, std::uint64_t seed);

struct ScenarioConfig {
  int n_routes = 12;
  int n_frames = 300;
  // Scales the expected actor counts; 0 gives empty scenes.
  double density = 1.0;
  std::uint64_t seed = 7;
  double timestep = 0.1;
  // Objects farther than this from the ego are never detected.
  double sensor_range = 50.0;
  // Route length as a fraction of the unobstructed distance.
  double route_fraction = 0.85;
};

struct PlannerConfig {
  double target_speed = 6.0;     // m/s
  double corridor_width = 3.0;   // m
  double corridor_range = 20.0;  // m
  int horizon = 8;
  double waypoint_dt = 0.5;  // s
  double comfort_decel = 4.0;  // m/s^2
  double standoff = 2.0;       // m kept to the obstacle
  double ego_length = 4.5;
  double ego_width = 2.0;
};

// Piecewise constant-velocity motion; segment i applies from start_time[i].
struct ActorScript {
  std::int64_t object_id = 0;
  ClassId class_id = kVehicleClass;
  Eigen::Vector3d dims = Eigen::Vector3d::Ones();
  Eigen::Vector2d start_position = Eigen::Vector2d::Zero();
  double z = 0.0;
  std::vector<double> start_times;
  std::vector<Eigen::Vector2d> velocities;

  Eigen::Vector2d PositionAt(double t) const;
  Eigen::Vector2d VelocityAt(double t) const;
};

struct Scenario {
  std::string route_id;
  int n_frames = 0;
  double timestep = 0.1;
  double route_length = 0.0;
  std::vector<ActorScript> actors;
};

std::vector<Scenario> GenerateScenarios(const ScenarioConfig& config,
                                        const PlannerConfig& planner);

// Ground-truth-only log with the ego following the lane at target speed.
RouteLog ScenarioGroundTruth(const Scenario& scenario,
                             const PlannerConfig& planner);

std::vector<RouteLog> GenerateScenario(const ScenarioConfig& config,
                                       const PlannerConfig& planner);

// Fills every frame's detections from its ground truth. Deterministic in
// (model.seed, route_id).
RouteLog ApplyNoise(const RouteLog& route, const NoiseModel& model,
                    double sensor_range = 50.0);

// Lane-following plan in the ego frame: target speed unless the nearest
// object overlapping the front corridor forces a stop short of it.
Trajectory SurrogatePlan(std::span<const OrientedBox3d> objects,
                         const Pose2d& ego, const PlannerConfig& config);

struct ClosedLoopResult {
  double route_completion = 0.0;
  std::vector<InfractionEvent> infractions;
  std::vector<Pose2d> ego_poses;
  std::vector<Trajectory> traj_gt_conditioned;
  std::vector<Trajectory> traj_perception_conditioned;
};

// Drives the surrogate planner along the route against the logged ground
// truth motion, planning on confirmed tracks from the raw detections. Each
// object contributes at most one collision.
ClosedLoopResult SurrogateOutcome(const RouteLog& route_with_detections,
                                  double route_length,
                                  const TrackerConfig& tracker,
                                  const PlannerConfig& planner);

// Realized detector behavior, for summaries.
struct NoiseStats {
  std::int64_t frames = 0;
  std::int64_t gt_in_range = 0;
  std::int64_t dropped = 0;
  std::int64_t false_positives = 0;
};

// Full desk-scale route for one detector: noise, closed loop, and the
// resulting ego poses, trajectories and outcome written into the log.
RouteLog SimulateRoute(const Scenario& scenario, const NoiseModel& model,
                       const TrackerConfig& tracker,
                       const PlannerConfig& planner, double sensor_range,
                       NoiseStats* stats = nullptr);

}  // namespace odeval

#endif  // ODEVAL_SYNTH_H_
