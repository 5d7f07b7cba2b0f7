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

#include "odeval/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string_view>

#include "odeval/geometry.h"

namespace odeval {
namespace {

constexpr double kLaneWidth = 3.5;
// Lateral offset at which a lead vehicle stops drifting out of the lane.
constexpr double kLeadExitOffset = 5.0;
constexpr double kLeadLateralSpeed = 1.5;
constexpr double kSidewalkOffset = 6.5;
// Below this speed a struck vehicle counts as static.
constexpr double kStaticSpeed = 0.1;

const Eigen::Vector3d kVehicleDims(4.5, 1.9, 1.6);
const Eigen::Vector3d kPedestrianDims(0.6, 0.6, 1.8);

Eigen::Vector3d ClassDims(ClassId c) {
  return c == kPedestrianClass ? kPedestrianDims : kVehicleDims;
}

// FNV-1a, so seeds do not depend on the standard library's hash.
std::uint64_t StableHash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 MakeRng(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int Poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(rng);
}

double Sign(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
}

// Draws up to `n` positions from [lo, hi] at least `spacing` apart.
std::vector<double> SpacedPositions(std::mt19937_64& rng, int n, double lo,
                                    double hi, double spacing) {
  std::vector<double> out;
  if (hi <= lo) return out;
  for (int tries = 0; static_cast<int>(out.size()) < n && tries < 20 * n;
       ++tries) {
    const double x = Uniform(rng, lo, hi);
    const bool clear = std::none_of(out.begin(), out.end(), [&](double o) {
      return std::abs(o - x) < spacing;
    });
    if (clear) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void CheckRange(bool ok, std::string_view field) {
  if (!ok) {
    throw Error(ErrorCode::kConfig,
                "noise model field '" + std::string(field) + "' out of range");
  }
}

OrientedBox3d EgoBox(const Pose2d& ego, const PlannerConfig& planner) {
  OrientedBox3d box;
  box.center = Eigen::Vector3d(ego.position.x(), ego.position.y(), 0.8);
  box.dims = Eigen::Vector3d(planner.ego_length, planner.ego_width, 1.6);
  box.yaw = NormalizeYaw(ego.heading);
  return box;
}

std::vector<Detection> NoisyDetections(const FrameRecord& frame,
                                       const Pose2d& ego,
                                       const NoiseModel& model,
                                       double sensor_range,
                                       std::uint64_t route_key,
                                       NoiseStats* stats) {
  std::mt19937_64 rng = MakeRng(model.seed, route_key,
                                static_cast<std::uint64_t>(frame.frame_index));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Detection> out;
  for (const GroundTruthObject& gt : frame.gt_objects) {
    const double d = BevDistanceToEgo(gt.box, ego);
    if (d > sensor_range) continue;
    if (stats != nullptr) ++stats->gt_in_range;
    const double p_drop =
        std::clamp(model.drop_base + model.drop_per_meter * d, 0.0, 1.0);
    if (Uniform(rng, 0.0, 1.0) < p_drop) {
      if (stats != nullptr) ++stats->dropped;
      continue;
    }

    Detection det;
    det.class_id = gt.class_id;
    det.box = gt.box;
    const Eigen::Vector2d dxy(model.sigma_xy * normal(rng),
                              model.sigma_xy * normal(rng));
    det.box.center.head<2>() += dxy;
    det.box.yaw = NormalizeYaw(gt.box.yaw + model.sigma_yaw * normal(rng));
    for (int i = 0; i < 3; ++i) {
      det.box.dims[i] *= std::exp(model.sigma_dims * normal(rng));
    }
    det.confidence = std::clamp(
        1.0 - 0.5 * dxy.norm() - model.conf_noise * std::abs(normal(rng)), 0.0,
        1.0);
    if (model.detector_velocity) {
      det.velocity = gt.velocity + model.sigma_velocity *
                                       Eigen::Vector2d(normal(rng), normal(rng));
    }
    out.push_back(det);
  }

  const int n_fp = Poisson(rng, model.fp_rate);
  if (stats != nullptr) {
    ++stats->frames;
    stats->false_positives += n_fp;
  }
  for (int i = 0; i < n_fp; ++i) {
    Detection det;
    det.class_id = std::bernoulli_distribution(0.7)(rng) ? kVehicleClass
                                                         : kPedestrianClass;
    const double r = sensor_range * std::sqrt(Uniform(rng, 0.0, 1.0));
    const double phi = Uniform(rng, -std::numbers::pi, std::numbers::pi);
    det.box.dims = ClassDims(det.class_id);
    for (int k = 0; k < 3; ++k) det.box.dims[k] *= std::exp(0.1 * normal(rng));
    det.box.center = Eigen::Vector3d(ego.position.x() + r * std::cos(phi),
                                     ego.position.y() + r * std::sin(phi),
                                     det.box.dims.z() / 2);
    det.box.yaw =
        NormalizeYaw(Uniform(rng, -std::numbers::pi, std::numbers::pi));
    det.confidence = Uniform(rng, 0.3, 0.7);
    if (model.detector_velocity) {
      det.velocity = Eigen::Vector2d(2.0 * normal(rng), 2.0 * normal(rng));
    }
    out.push_back(det);
  }
  return out;
}

InfractionKind CollisionKind(const GroundTruthObject& gt) {
  if (gt.class_id == kPedestrianClass) {
    return InfractionKind::kCollisionPedestrian;
  }
  return gt.velocity.norm() < kStaticSpeed ? InfractionKind::kCollisionStatic
                                           : InfractionKind::kCollisionVehicle;
}

// One closed-loop rollout; callers feed frames in order.
class ClosedLoop {
 public:
  ClosedLoop(const TrackerConfig& tracker, const PlannerConfig& planner,
             double timestep)
      : tracker_(tracker, timestep), planner_(planner), timestep_(timestep) {
    ego_.heading = 0.0;
  }

  const Pose2d& ego() const { return ego_; }

  void Step(const FrameRecord& frame) {
    const StepOutput tracked = tracker_.Step(frame);

    std::vector<OrientedBox3d> gt_boxes;
    gt_boxes.reserve(frame.gt_objects.size());
    for (const GroundTruthObject& gt : frame.gt_objects) {
      gt_boxes.push_back(gt.box);
    }
    std::vector<OrientedBox3d> seen;
    seen.reserve(tracked.confirmed.size());
    for (const Detection& d : tracked.confirmed) seen.push_back(d.box);

    result_.ego_poses.push_back(ego_);
    result_.traj_gt_conditioned.push_back(
        SurrogatePlan(gt_boxes, ego_, planner_));
    const Trajectory& plan = result_.traj_perception_conditioned.emplace_back(
        SurrogatePlan(seen, ego_, planner_));

    const OrientedBox3d ego_box = EgoBox(ego_, planner_);
    for (const GroundTruthObject& gt : frame.gt_objects) {
      if (hit_.count(gt.object_id)) continue;
      if (BevIntersectionArea(ego_box, gt.box) > 0.0) {
        hit_.insert(gt.object_id);
        result_.infractions.push_back({CollisionKind(gt), frame.frame_index});
      }
    }

    // Track the first waypoint's average speed.
    const double speed =
        plan.waypoints.empty() ? 0.0 : plan.waypoints[0].x() / plan.timestep;
    const double step = speed * timestep_;
    ego_.position += step * Eigen::Vector2d(std::cos(ego_.heading),
                                            std::sin(ego_.heading));
    traveled_ += step;
  }

  ClosedLoopResult Finish(double route_length) {
    if (!(route_length > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "route length must be positive");
    }
    result_.route_completion =
        std::min(100.0, 100.0 * traveled_ / route_length);
    return std::move(result_);
  }

 private:
  Tracker tracker_;
  PlannerConfig planner_;
  double timestep_;
  Pose2d ego_;
  double traveled_ = 0.0;
  std::set<std::int64_t> hit_;
  ClosedLoopResult result_;
};

void RefreshDistances(FrameRecord& frame) {
  for (GroundTruthObject& gt : frame.gt_objects) {
    gt.distance_to_ego = BevDistanceToEgo(gt.box, frame.ego_pose);
  }
}

}  // namespace

void ValidateNoiseModel(const NoiseModel& m) {
  CheckRange(m.drop_base >= 0.0 && m.drop_base <= 1.0, "drop_base");
  CheckRange(m.drop_per_meter >= 0.0 && std::isfinite(m.drop_per_meter),
             "drop_per_meter");
  CheckRange(m.sigma_xy >= 0.0 && std::isfinite(m.sigma_xy), "sigma_xy");
  CheckRange(m.sigma_yaw >= 0.0 && std::isfinite(m.sigma_yaw), "sigma_yaw");
  CheckRange(m.sigma_dims >= 0.0 && m.sigma_dims < 1.0, "sigma_dims");
  CheckRange(m.fp_rate >= 0.0 && m.fp_rate <= 1000.0, "fp_rate");
  CheckRange(m.conf_noise >= 0.0 && std::isfinite(m.conf_noise), "conf_noise");
  CheckRange(m.sigma_velocity >= 0.0 && std::isfinite(m.sigma_velocity),
             "sigma_velocity");
}

NoiseModel SeverityLadder(int rank, int count, std::uint64_t seed) {
  if (count < 1 || rank < 0 || rank >= count) {
    throw Error(ErrorCode::kInvalidArgument, "ladder rank out of range");
  }
  const double s = count == 1 ? 0.0 : static_cast<double>(rank) / (count - 1);
  NoiseModel m;
  char id[32];
  std::snprintf(id, sizeof(id), "det_%02d", rank);
  m.id = id;
  m.drop_base = 0.02 + 0.40 * s;
  m.drop_per_meter = 0.001 + 0.006 * s;
  m.sigma_xy = 0.03 + 0.45 * s;
  m.sigma_yaw = 0.02 + 0.35 * s;
  m.sigma_dims = 0.02 + 0.12 * s;
  m.fp_rate = 0.3 + 3.0 * s;
  m.conf_noise = 0.05 + 0.25 * s;
  m.seed = seed * 1000003ull + static_cast<std::uint64_t>(rank);
  return m;
}

Eigen::Vector2d ActorScript::PositionAt(double t) const {
  Eigen::Vector2d p = start_position;
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    const double begin = start_times[i];
    if (t <= begin) break;
    const double end =
        i + 1 < start_times.size() ? std::min(t, start_times[i + 1]) : t;
    p += velocities[i] * (end - begin);
  }
  return p;
}

Eigen::Vector2d ActorScript::VelocityAt(double t) const {
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    if (t >= start_times[i]) v = velocities[i];
  }
  return v;
}

namespace {

// Heading follows the initial direction of travel; parked and lateral
// movers keep yaw 0 or face across the lane.
double ActorYaw(const ActorScript& a) {
  if (a.velocities.empty() || a.velocities.front().norm() == 0.0) return 0.0;
  return std::atan2(a.velocities.front().y(), a.velocities.front().x());
}

OrientedBox3d ActorBox(const ActorScript& a, double t, double clearance) {
  const Eigen::Vector2d p = a.PositionAt(t);
  return MakeBox({p.x(), p.y(), a.z},
                 a.dims + Eigen::Vector3d(clearance, clearance, 0.0),
                 ActorYaw(a));
}

bool ClashesWithAny(const ActorScript& a, const std::vector<ActorScript>& others,
                    int n_frames, double timestep) {
  constexpr double kClearance = 0.5;
  for (int k = 0; k < n_frames; ++k) {
    const double t = k * timestep;
    const OrientedBox3d box = ActorBox(a, t, kClearance);
    for (const ActorScript& o : others) {
      if ((o.PositionAt(t) - a.PositionAt(t)).norm() > 8.0) continue;
      if (BevIou(box, ActorBox(o, t, kClearance)) > 0.0) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Scenario> GenerateScenarios(const ScenarioConfig& config,
                                        const PlannerConfig& planner) {
  if (config.n_routes < 1 || config.n_frames < 2 || !(config.timestep > 0.0) ||
      !(config.density >= 0.0) || !(config.route_fraction > 0.0 &&
                                    config.route_fraction <= 1.0)) {
    throw Error(ErrorCode::kConfig, "invalid scenario configuration");
  }
  const double v_t = planner.target_speed;
  const double nominal = v_t * config.timestep * (config.n_frames - 1);
  const double per_100m = config.density * nominal / 100.0;

  std::vector<Scenario> out;
  for (int r = 0; r < config.n_routes; ++r) {
    std::mt19937_64 rng =
        MakeRng(config.seed, 0x5ce9a410ull, static_cast<std::uint64_t>(r));
    Scenario sc;
    char id[32];
    std::snprintf(id, sizeof(id), "route_%02d", r);
    sc.route_id = id;
    sc.n_frames = config.n_frames;
    sc.timestep = config.timestep;
    sc.route_length = config.route_fraction * nominal;
    std::int64_t next_id = 1;

    // Actors whose footprints would ever touch an earlier actor's are
    // dropped; scripted motion has no other way to avoid passing through.
    auto add = [&](ClassId c, const Eigen::Vector2d& start,
                   std::vector<double> times,
                   std::vector<Eigen::Vector2d> vels) {
      ActorScript a;
      a.class_id = c;
      a.dims = ClassDims(c);
      a.z = a.dims.z() / 2;
      a.start_position = start;
      a.start_times = std::move(times);
      a.velocities = std::move(vels);
      if (ClashesWithAny(a, sc.actors, config.n_frames, config.timestep)) {
        return;
      }
      a.object_id = next_id++;
      sc.actors.push_back(std::move(a));
    };

    // Slower vehicles in the ego lane that eventually pull out of it.
    const int n_lead = Poisson(rng, 0.5 * per_100m);
    for (double x0 : SpacedPositions(rng, n_lead, 20.0,
                                     std::max(25.0, 0.6 * nominal), 15.0)) {
      const double u = Uniform(rng, 0.0, 3.5);
      const double t_leave = Uniform(rng, 1.0, 6.0);
      const double side = Sign(rng);
      const double t_out = t_leave + kLeadExitOffset / kLeadLateralSpeed;
      add(kVehicleClass, {x0, 0.0}, {0.0, t_leave, t_out},
          {{u, 0.0}, {u, side * kLeadLateralSpeed}, {u, 0.0}});
    }

    const int n_cross = Poisson(rng, 1.0 * per_100m);
    for (double xc :
         SpacedPositions(rng, n_cross, 25.0, sc.route_length, 10.0)) {
      const double s = Uniform(rng, 1.0, 1.6);
      const double side = Sign(rng);
      const double t_c = xc / v_t;
      add(kPedestrianClass, {xc, side * s * t_c}, {0.0}, {{0.0, -side * s}});
    }

    const int n_adjacent = Poisson(rng, 3.0 * per_100m);
    for (int i = 0; i < n_adjacent; ++i) {
      const double side = Sign(rng);
      const double x0 = Uniform(rng, -20.0, nominal + 20.0);
      const bool parked = std::bernoulli_distribution(0.4)(rng);
      const double v = parked ? 0.0 : Sign(rng) * Uniform(rng, 3.0, 9.0);
      add(kVehicleClass, {x0, side * kLaneWidth}, {0.0}, {{v, 0.0}});
    }

    const int n_walkers = Poisson(rng, 1.0 * per_100m);
    for (int i = 0; i < n_walkers; ++i) {
      const double side = Sign(rng);
      const double x0 = Uniform(rng, -10.0, nominal + 10.0);
      add(kPedestrianClass, {x0, side * kSidewalkOffset}, {0.0},
          {{Sign(rng) * Uniform(rng, 0.8, 1.5), 0.0}});
    }
    out.push_back(std::move(sc));
  }
  return out;
}

RouteLog ScenarioGroundTruth(const Scenario& scenario,
                             const PlannerConfig& planner) {
  RouteLog log;
  log.route_id = scenario.route_id;
  log.detector_id = "ground_truth";
  log.timestep = scenario.timestep;
  log.route_completion = 100.0;
  log.frames.reserve(scenario.n_frames);
  for (int k = 0; k < scenario.n_frames; ++k) {
    FrameRecord f;
    f.frame_index = k;
    f.time = k * scenario.timestep;
    f.ego_pose.position = Eigen::Vector2d(planner.target_speed * f.time, 0.0);
    f.ego_pose.heading = 0.0;
    for (const ActorScript& a : scenario.actors) {
      GroundTruthObject gt;
      gt.object_id = a.object_id;
      gt.class_id = a.class_id;
      gt.velocity = a.VelocityAt(f.time);
      gt.box = ActorBox(a, f.time, 0.0);
      gt.distance_to_ego = BevDistanceToEgo(gt.box, f.ego_pose);
      f.gt_objects.push_back(gt);
    }
    log.frames.push_back(std::move(f));
  }
  return log;
}

std::vector<RouteLog> GenerateScenario(const ScenarioConfig& config,
                                       const PlannerConfig& planner) {
  std::vector<RouteLog> out;
  for (const Scenario& sc : GenerateScenarios(config, planner)) {
    out.push_back(ScenarioGroundTruth(sc, planner));
  }
  return out;
}

RouteLog ApplyNoise(const RouteLog& route, const NoiseModel& model,
                    double sensor_range) {
  ValidateNoiseModel(model);
  RouteLog out = route;
  out.detector_id = model.id;
  out.detections_tracked = false;
  const std::uint64_t key = StableHash(route.route_id);
  for (FrameRecord& f : out.frames) {
    f.detections =
        NoisyDetections(f, f.ego_pose, model, sensor_range, key, nullptr);
  }
  return out;
}

Trajectory SurrogatePlan(std::span<const OrientedBox3d> objects,
                         const Pose2d& ego, const PlannerConfig& config) {
  const double front = config.ego_length / 2;
  const double half_w = config.corridor_width / 2;
  double gap = std::numeric_limits<double>::infinity();
  for (const OrientedBox3d& box : objects) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const Eigen::Vector2d& corner : BevFootprint(box).vertices) {
      const Eigen::Vector2d p = ego.ToLocal(corner);
      x_min = std::min(x_min, p.x());
      x_max = std::max(x_max, p.x());
      y_min = std::min(y_min, p.y());
      y_max = std::max(y_max, p.y());
    }
    if (y_max < -half_w || y_min > half_w) continue;
    if (x_max <= front) continue;
    if (x_min - front > config.corridor_range) continue;
    gap = std::min(gap, x_min - front);
  }

  Trajectory traj;
  traj.timestep = config.waypoint_dt;
  traj.waypoints.reserve(config.horizon);
  double x = 0.0;
  for (int i = 0; i < config.horizon; ++i) {
    double step = config.target_speed * config.waypoint_dt;
    if (std::isfinite(gap)) {
      const double room = std::max(0.0, gap - config.standoff - x);
      const double v = std::min(config.target_speed,
                                std::sqrt(2.0 * config.comfort_decel * room));
      step = std::min(v * config.waypoint_dt, room);
    }
    x += step;
    traj.waypoints.emplace_back(x, 0.0);
  }
  return traj;
}

ClosedLoopResult SurrogateOutcome(const RouteLog& route_with_detections,
                                  double route_length,
                                  const TrackerConfig& tracker,
                                  const PlannerConfig& planner) {
  ClosedLoop loop(tracker, planner, route_with_detections.timestep);
  for (const FrameRecord& f : route_with_detections.frames) loop.Step(f);
  return loop.Finish(route_length);
}

RouteLog SimulateRoute(const Scenario& scenario, const NoiseModel& model,
                       const TrackerConfig& tracker,
                       const PlannerConfig& planner, double sensor_range,
                       NoiseStats* stats) {
  ValidateNoiseModel(model);
  RouteLog log = ScenarioGroundTruth(scenario, planner);
  log.detector_id = model.id;
  log.detections_tracked = false;
  const std::uint64_t key = StableHash(scenario.route_id);

  // Detections depend on where the ego actually is, so noise is drawn
  // inside the loop rather than up front.
  ClosedLoop loop(tracker, planner, scenario.timestep);
  for (FrameRecord& f : log.frames) {
    f.ego_pose = loop.ego();
    RefreshDistances(f);
    f.detections =
        NoisyDetections(f, f.ego_pose, model, sensor_range, key, stats);
    loop.Step(f);
  }
  ClosedLoopResult result = loop.Finish(scenario.route_length);
  for (std::size_t k = 0; k < log.frames.size(); ++k) {
    log.frames[k].traj_gt_conditioned =
        std::move(result.traj_gt_conditioned[k]);
    log.frames[k].traj_perception_conditioned =
        std::move(result.traj_perception_conditioned[k]);
  }
  log.route_completion = result.route_completion;
  log.infractions = std::move(result.infractions);
  return log;
}

}  // namespace odeval
