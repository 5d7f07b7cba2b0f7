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

#include "odeval/tracking.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "odeval/geometry.h"

namespace odeval {

std::vector<Detection> Nms(std::span<const Detection> dets,
                           double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "nms threshold must be in (0,1)");
  }
  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return dets[a].confidence > dets[b].confidence;
  });
  std::vector<Detection> kept;
  for (int i : order) {
    const Detection& cand = dets[i];
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
          return k.class_id == cand.class_id &&
                 BevIou(k.box, cand.box) > iou_threshold;
        });
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

AssignmentSolution SolveAssignment(const Eigen::MatrixXd& cost) {
  AssignmentSolution out;
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  out.col_of_row.assign(rows, -1);
  if (rows == 0 || cols == 0) return out;
  if (rows > cols) {
    const AssignmentSolution t = SolveAssignment(cost.transpose());
    for (int c = 0; c < cols; ++c) {
      if (t.col_of_row[c] >= 0) out.col_of_row[t.col_of_row[c]] = c;
    }
    out.cost = t.cost;
    return out;
  }

  // Shortest augmenting paths with row/column potentials; 1-based, with
  // column 0 as the virtual source.
  const int n = rows;
  const int m = cols;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> row_of_col(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = row_of_col[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (int j = 1; j <= m; ++j) {
    if (row_of_col[j] != 0) {
      out.col_of_row[row_of_col[j] - 1] = j - 1;
      out.cost += cost(row_of_col[j] - 1, j - 1);
    }
  }
  return out;
}

Association Associate(std::span<const Track> tracks,
                      std::span<const Detection> dets, double gate) {
  if (!(gate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "association gate must be > 0");
  }
  const int n = static_cast<int>(tracks.size());
  const int m = static_cast<int>(dets.size());
  Association out;
  Eigen::MatrixXd dist(n, m);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n, m);
  for (int t = 0; t < n; ++t) {
    const OrientedBox3d& last = tracks[t].history.back().box;
    for (int d = 0; d < m; ++d) {
      dist(t, d) = CenterDistanceBev(last, dets[d].box);
      allowed(t, d) =
          tracks[t].class_id == dets[d].class_id && dist(t, d) <= gate;
    }
  }
  // A forbidden entry costs more than any full set of allowed pairs, so the
  // optimum first maximizes the allowed-pair count.
  const double forbidden = (std::min(n, m) + 1) * gate + 1.0;
  Eigen::MatrixXd cost = allowed.select(dist, forbidden);
  const AssignmentSolution solution = SolveAssignment(cost);

  std::vector<bool> det_used(m, false);
  for (int t = 0; t < n; ++t) {
    const int d = solution.col_of_row[t];
    if (d >= 0 && allowed(t, d)) {
      out.pairs.emplace_back(t, d);
      out.total_cost += dist(t, d);
      det_used[d] = true;
    } else {
      out.unassigned_tracks.push_back(t);
    }
  }
  for (int d = 0; d < m; ++d) {
    if (!det_used[d]) out.unassigned_dets.push_back(d);
  }
  return out;
}

double EstimateSpeed(const Track& track, double timestep) {
  if (track.history.size() < 2) {
    throw Error(ErrorCode::kNoSpeed, "track younger than two frames");
  }
  if (!(timestep > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "timestep must be positive");
  }
  const auto& cur = track.history[track.history.size() - 1].box;
  const auto& prev = track.history[track.history.size() - 2].box;
  return (cur.bev_center() - prev.bev_center()).norm() / timestep;
}

Tracker::Tracker(const TrackerConfig& config, double timestep)
    : config_(config), timestep_(timestep) {
  if (!(timestep > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "timestep must be positive");
  }
  if (config.confirm_frames < 1) {
    throw Error(ErrorCode::kInvalidArgument, "confirm_frames must be >= 1");
  }
}

StepOutput Tracker::Step(const FrameRecord& frame) {
  if (last_frame_index_ && frame.frame_index <= *last_frame_index_) {
    throw Error(ErrorCode::kSequencing,
                "frame " + std::to_string(frame.frame_index) +
                    " arrived after frame " +
                    std::to_string(*last_frame_index_));
  }
  last_frame_index_ = frame.frame_index;

  std::vector<Detection> gated;
  for (const Detection& d : frame.detections) {
    if (d.confidence >= config_.conf_threshold) gated.push_back(d);
  }
  std::vector<Detection> kept = Nms(gated, config_.nms_iou);

  const Association assoc = Associate(tracks_, kept, config_.gate_m);
  std::vector<Track> next;
  next.reserve(assoc.pairs.size() + assoc.unassigned_dets.size());
  std::vector<std::int64_t> track_of_det(kept.size(), -1);
  for (const auto& [t, d] : assoc.pairs) {
    Track track = std::move(tracks_[t]);
    track.history.push_back({frame.frame_index, kept[d].box,
                             kept[d].confidence});
    track.age = static_cast<int>(track.history.size());
    const auto& prev = track.history[track.history.size() - 2].box;
    track.velocity =
        Eigen::Vector2d((kept[d].box.bev_center() - prev.bev_center()) /
                        timestep_);
    track.speed = EstimateSpeed(track, timestep_);
    track.confirmed = track.age >= config_.confirm_frames;
    track_of_det[d] = track.track_id;
    next.push_back(std::move(track));
  }
  // Detections are visited in confidence order, which fixes id assignment.
  for (int d : assoc.unassigned_dets) {
    Track track;
    track.track_id = next_track_id_++;
    track.class_id = kept[d].class_id;
    track.history.push_back({frame.frame_index, kept[d].box,
                             kept[d].confidence});
    track.age = 1;
    track.confirmed = track.age >= config_.confirm_frames;
    track_of_det[d] = track.track_id;
    next.push_back(std::move(track));
  }
  std::sort(next.begin(), next.end(), [](const Track& a, const Track& b) {
    return a.track_id < b.track_id;
  });
  tracks_ = std::move(next);

  StepOutput out;
  for (std::size_t d = 0; d < kept.size(); ++d) {
    Detection det = kept[d];
    const auto it = std::lower_bound(
        tracks_.begin(), tracks_.end(), track_of_det[d],
        [](const Track& t, std::int64_t id) { return t.track_id < id; });
    if (!det.velocity && it->velocity) det.velocity = it->velocity;
    out.operating.push_back(det);
    if (it->confirmed) out.confirmed.push_back(det);
  }
  return out;
}

std::string Tracker::SerializeState() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["next_track_id"] = next_track_id_;
  j["last_frame_index"] =
      last_frame_index_ ? nlohmann::ordered_json(*last_frame_index_)
                        : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json tracks = nlohmann::ordered_json::array();
  for (const Track& t : tracks_) {
    nlohmann::ordered_json tj = nlohmann::ordered_json::object();
    tj["id"] = t.track_id;
    tj["class_id"] = t.class_id;
    tj["age"] = t.age;
    tj["confirmed"] = t.confirmed;
    tj["speed"] = t.speed ? nlohmann::ordered_json(*t.speed)
                          : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const TrackPoint& p : t.history) {
      hist.push_back({p.frame_index, p.box.center.x(), p.box.center.y(),
                      p.box.center.z(), p.box.yaw, p.confidence});
    }
    tj["history"] = std::move(hist);
    tracks.push_back(std::move(tj));
  }
  j["tracks"] = std::move(tracks);
  return j.dump();
}

RouteLog TrackRoute(const RouteLog& raw, const TrackerConfig& config) {
  RouteLog out = raw;
  Tracker tracker(config, raw.timestep);
  for (FrameRecord& frame : out.frames) {
    frame.detections = tracker.Step(frame).operating;
  }
  out.detections_tracked = true;
  return out;
}

}  // namespace odeval
