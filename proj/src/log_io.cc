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

#include "odeval/log_io.h"

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace odeval {
namespace {

using Json = nlohmann::ordered_json;

// Tracks the current line so every schema error names where it happened.
class FieldReader {
 public:
  FieldReader(std::string_view source, std::size_t line)
      : source_(source), line_(line) {}

  [[noreturn]] void Fail(std::string_view field, std::string_view what) const {
    throw Error(ErrorCode::kParse, std::string(source_) + ":" +
                                       std::to_string(line_) + ": field '" +
                                       std::string(field) + "' " +
                                       std::string(what));
  }

  const Json& Require(const Json& obj, std::string_view key) const {
    if (!obj.is_object()) Fail(key, "parent is not an object");
    auto it = obj.find(key);
    if (it == obj.end()) Fail(key, "is missing");
    return *it;
  }

  double Number(const Json& obj, std::string_view key) const {
    const Json& v = Require(obj, key);
    if (!v.is_number()) Fail(key, "must be a number");
    return v.get<double>();
  }

  std::int64_t Integer(const Json& obj, std::string_view key) const {
    const Json& v = Require(obj, key);
    if (!v.is_number_integer()) Fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  std::string String(const Json& obj, std::string_view key) const {
    const Json& v = Require(obj, key);
    if (!v.is_string()) Fail(key, "must be a string");
    return v.get<std::string>();
  }

  const Json& Array(const Json& obj, std::string_view key) const {
    const Json& v = Require(obj, key);
    if (!v.is_array()) Fail(key, "must be an array");
    return v;
  }

  template <int N>
  Eigen::Matrix<double, N, 1> Vector(const Json& v,
                                     std::string_view key) const {
    if (!v.is_array() || v.size() != N) {
      Fail(key, "must be an array of " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) {
      if (!v[i].is_number()) Fail(key, "must contain numbers");
      out[i] = v[i].template get<double>();
    }
    return out;
  }

  template <int N>
  Eigen::Matrix<double, N, 1> Vector(const Json& obj, std::string_view key,
                                     std::nullptr_t) const {
    return Vector<N>(Require(obj, key), key);
  }

  OrientedBox3d Box(const Json& obj) const {
    OrientedBox3d box;
    box.center = Vector<3>(obj, "center", nullptr);
    box.dims = Vector<3>(obj, "dims", nullptr);
    const double yaw = Number(obj, "yaw");
    if (!std::isfinite(yaw)) Fail("yaw", "must be finite");
    box.yaw = NormalizeYaw(yaw);
    return box;
  }

  Trajectory Traj(const Json& v, std::string_view key) const {
    if (!v.is_object()) Fail(key, "must be an object");
    Trajectory t;
    t.timestep = Number(v, "timestep");
    for (const Json& w : Array(v, "waypoints")) {
      t.waypoints.push_back(Vector<2>(w, "waypoints"));
    }
    return t;
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

RouteLog ParseHeader(const Json& j, const FieldReader& r) {
  RouteLog log;
  log.route_id = r.String(j, "route_id");
  log.detector_id = r.String(j, "detector_id");
  log.route_completion = r.Number(j, "route_completion");
  log.timestep = r.Number(j, "timestep");
  for (const Json& e : r.Array(j, "infractions")) {
    InfractionEvent event;
    const std::string kind = r.String(e, "kind");
    auto parsed = ParseInfractionKind(kind);
    if (!parsed) r.Fail("kind", "has unknown value '" + kind + "'");
    event.kind = *parsed;
    event.frame_index = r.Integer(e, "frame_index");
    log.infractions.push_back(event);
  }
  if (auto it = j.find("detections_tracked"); it != j.end()) {
    if (!it->is_boolean()) r.Fail("detections_tracked", "must be a boolean");
    log.detections_tracked = it->get<bool>();
  }
  return log;
}

FrameRecord ParseFrame(const Json& j, const FieldReader& r) {
  FrameRecord frame;
  frame.frame_index = r.Integer(j, "frame_index");
  frame.time = r.Number(j, "time");
  const Json& pose = r.Require(j, "ego_pose");
  frame.ego_pose.position = {r.Number(pose, "x"), r.Number(pose, "y")};
  frame.ego_pose.heading = r.Number(pose, "heading");

  for (const Json& g : r.Array(j, "gt_objects")) {
    GroundTruthObject gt;
    gt.object_id = r.Integer(g, "object_id");
    gt.class_id = static_cast<ClassId>(r.Integer(g, "class_id"));
    gt.box = r.Box(g);
    gt.velocity = r.Vector<2>(g, "velocity", nullptr);
    if (g.contains("distance_to_ego")) {
      gt.distance_to_ego = r.Number(g, "distance_to_ego");
    } else {
      gt.distance_to_ego = BevDistanceToEgo(gt.box, frame.ego_pose);
    }
    frame.gt_objects.push_back(std::move(gt));
  }
  for (const Json& d : r.Array(j, "detections")) {
    Detection det;
    det.class_id = static_cast<ClassId>(r.Integer(d, "class_id"));
    det.box = r.Box(d);
    det.confidence = r.Number(d, "confidence");
    if (d.contains("velocity")) {
      det.velocity = r.Vector<2>(d, "velocity", nullptr);
    }
    frame.detections.push_back(std::move(det));
  }
  if (auto it = j.find("traj_gt_conditioned"); it != j.end()) {
    frame.traj_gt_conditioned = r.Traj(*it, "traj_gt_conditioned");
  }
  if (auto it = j.find("traj_perception_conditioned"); it != j.end()) {
    frame.traj_perception_conditioned =
        r.Traj(*it, "traj_perception_conditioned");
  }
  return frame;
}

Json Vec(const auto& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json TrajToJson(const Trajectory& t) {
  Json w = Json::array();
  for (const auto& p : t.waypoints) w.push_back(Vec(p));
  Json out = Json::object();
  out["timestep"] = t.timestep;
  out["waypoints"] = std::move(w);
  return out;
}

void PutBox(Json& out, const OrientedBox3d& box) {
  out["center"] = Vec(box.center);
  out["dims"] = Vec(box.dims);
  out["yaw"] = box.yaw;
}

}  // namespace

RouteLog ParseRouteLog(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  RouteLog log;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    FieldReader reader(source, line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                         std::to_string(line_no) +
                                         ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) reader.Fail("<line>", "must be a JSON object");
    if (!have_header) {
      log = ParseHeader(j, reader);
      have_header = true;
    } else {
      log.frames.push_back(ParseFrame(j, reader));
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::kParse,
                std::string(source) + ": missing route header line");
  }
  ValidateRouteLog(log);
  return log;
}

RouteLog LoadRouteLog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return ParseRouteLog(in, path.string());
}

std::string SerializeRouteLog(const RouteLog& log) {
  std::string out;
  Json header = Json::object();
  header["route_id"] = log.route_id;
  header["detector_id"] = log.detector_id;
  header["route_completion"] = log.route_completion;
  header["timestep"] = log.timestep;
  Json infractions = Json::array();
  for (const InfractionEvent& e : log.infractions) {
    Json ev = Json::object();
    ev["kind"] = InfractionKindName(e.kind);
    ev["frame_index"] = e.frame_index;
    infractions.push_back(std::move(ev));
  }
  header["infractions"] = std::move(infractions);
  header["detections_tracked"] = log.detections_tracked;
  out += header.dump();
  out += '\n';

  for (const FrameRecord& frame : log.frames) {
    Json j = Json::object();
    j["frame_index"] = frame.frame_index;
    j["time"] = frame.time;
    Json pose = Json::object();
    pose["x"] = frame.ego_pose.position.x();
    pose["y"] = frame.ego_pose.position.y();
    pose["heading"] = frame.ego_pose.heading;
    j["ego_pose"] = std::move(pose);

    Json gts = Json::array();
    for (const GroundTruthObject& gt : frame.gt_objects) {
      Json g = Json::object();
      g["object_id"] = gt.object_id;
      g["class_id"] = gt.class_id;
      PutBox(g, gt.box);
      g["velocity"] = Vec(gt.velocity);
      g["distance_to_ego"] = gt.distance_to_ego;
      gts.push_back(std::move(g));
    }
    j["gt_objects"] = std::move(gts);

    Json dets = Json::array();
    for (const Detection& det : frame.detections) {
      Json d = Json::object();
      d["class_id"] = det.class_id;
      PutBox(d, det.box);
      d["confidence"] = det.confidence;
      if (det.velocity) d["velocity"] = Vec(*det.velocity);
      dets.push_back(std::move(d));
    }
    j["detections"] = std::move(dets);
    if (frame.traj_gt_conditioned) {
      j["traj_gt_conditioned"] = TrajToJson(*frame.traj_gt_conditioned);
    }
    if (frame.traj_perception_conditioned) {
      j["traj_perception_conditioned"] =
          TrajToJson(*frame.traj_perception_conditioned);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

void WriteRouteLog(const std::filesystem::path& path, const RouteLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << SerializeRouteLog(log);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace odeval
