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

// Perception post-processing: confidence gate, NMS, frame-to-frame
// association and track confirmation, with a two-point speed estimate.

#ifndef ODEVAL_TRACKING_H_
#define ODEVAL_TRACKING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "odeval/types.h"

namespace odeval {

struct TrackerConfig {
  double conf_threshold = 0.3;
  double nms_iou = 0.2;
  int confirm_frames = 4;
  double gate_m = 5.0;
};

struct TrackPoint {
  std::int64_t frame_index = 0;
  OrientedBox3d box;
  double confidence = 0.0;
};

struct Track {
  std::int64_t track_id = 0;
  ClassId class_id = 0;
  // Contiguous in frame_index; a miss terminates the track.
  std::vector<TrackPoint> history;
  int age = 0;
  bool confirmed = false;
  // Present iff age >= 2.
  std::optional<double> speed;
  std::optional<Eigen::Vector2d> velocity;
};

// Greedy BEV-IoU suppression within each class. Returns the survivors sorted
// by descending confidence.
std::vector<Detection> Nms(std::span<const Detection> dets,
                           double iou_threshold = 0.2);

struct AssignmentSolution {
  // col_of_row[r] = assigned column, or -1 when rows outnumber columns.
  std::vector<int> col_of_row;
  double cost = 0.0;
};

// Minimum-cost assignment saturating the smaller side (Hungarian method,
// O(n^2 m)). Entries must be finite.
AssignmentSolution SolveAssignment(const Eigen::MatrixXd& cost);

struct Association {
  // (track index, detection index).
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unassigned_tracks;
  std::vector<int> unassigned_dets;
  double total_cost = 0.0;
};

// Optimal one-to-one association with cost = BEV center distance. Pairs over
// `gate` or across classes are forbidden: the solver first maximizes the
// number of allowed pairs, then minimizes their summed distance.
Association Associate(std::span<const Track> tracks,
                      std::span<const Detection> dets, double gate);

// |BEV(c_t) - BEV(c_{t-1})| / timestep. Throws kNoSpeed for age < 2.
double EstimateSpeed(const Track& track, double timestep);

struct StepOutput {
  // Gated and suppressed detections; velocities filled from tracks where
  // the detection had none and the track is at least two frames old.
  std::vector<Detection> operating;
  // The subset belonging to confirmed tracks; this is what a planner sees.
  std::vector<Detection> confirmed;
};

class Tracker {
 public:
  Tracker(const TrackerConfig& config, double timestep);

  // Frames must arrive in strictly increasing frame_index (kSequencing).
  StepOutput Step(const FrameRecord& frame);

  const std::vector<Track>& tracks() const { return tracks_; }

  // Canonical dump of the full state, for determinism checks.
  std::string SerializeState() const;

 private:
  TrackerConfig config_;
  double timestep_;
  std::vector<Track> tracks_;
  std::int64_t next_track_id_ = 0;
  std::optional<std::int64_t> last_frame_index_;
};

// Runs a fresh tracker over every frame and replaces each frame's
// detections with the operating set.
RouteLog TrackRoute(const RouteLog& raw, const TrackerConfig& config);

}  // namespace odeval

#endif  // ODEVAL_TRACKING_H_
