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

#include "odeval/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace odeval {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Entry {
 public:
  Entry(std::string key, std::string value, std::string where)
      : key_(std::move(key)), value_(std::move(value)),
        where_(std::move(where)) {}

  const std::string& key() const { return key_; }

  [[noreturn]] void Fail(std::string_view what) const {
    throw Error(ErrorCode::kConfig,
                where_ + ": key '" + key_ + "': " + std::string(what));
  }

  double Number() const {
    double v = 0.0;
    const char* end = value_.data() + value_.size();
    const auto [ptr, ec] = std::from_chars(value_.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      Fail("expected a number, got '" + value_ + "'");
    }
    return v;
  }

  double Positive() const {
    const double v = Number();
    if (!(v > 0.0)) Fail("must be positive");
    return v;
  }

  double Probability() const {
    const double v = Number();
    if (!(v >= 0.0 && v <= 1.0)) Fail("must lie in [0, 1]");
    return v;
  }

  long long Integer(long long lo) const {
    long long v = 0;
    const char* end = value_.data() + value_.size();
    const auto [ptr, ec] = std::from_chars(value_.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      Fail("expected an integer, got '" + value_ + "'");
    }
    if (v < lo) Fail("must be at least " + std::to_string(lo));
    return v;
  }

  bool Bool() const {
    if (value_ == "true" || value_ == "1") return true;
    if (value_ == "false" || value_ == "0") return false;
    Fail("expected true or false, got '" + value_ + "'");
  }

  const std::string& Text() const { return value_; }

 private:
  std::string key_;
  std::string value_;
  std::string where_;
};

void ApplyModelField(NoiseModel& m, std::string_view field, const Entry& e) {
  if (field == "drop_base") {
    m.drop_base = e.Probability();
  } else if (field == "drop_per_meter") {
    m.drop_per_meter = e.Number();
  } else if (field == "sigma_xy") {
    m.sigma_xy = e.Number();
  } else if (field == "sigma_yaw") {
    m.sigma_yaw = e.Number();
  } else if (field == "sigma_dims") {
    m.sigma_dims = e.Number();
  } else if (field == "fp_rate") {
    m.fp_rate = e.Number();
  } else if (field == "conf_noise") {
    m.conf_noise = e.Number();
  } else if (field == "detector_velocity") {
    m.detector_velocity = e.Bool();
  } else if (field == "sigma_velocity") {
    m.sigma_velocity = e.Number();
  } else if (field == "seed") {
    m.seed = static_cast<std::uint64_t>(e.Integer(0));
  } else {
    e.Fail("unknown key");
  }
}

void Apply(Config& c, std::map<std::string, NoiseModel>& models,
           const Entry& e) {
  const std::string& k = e.key();
  EvalConfig& ev = c.eval;
  StudyConfig& st = c.study;
  if (k == "tracker.conf_threshold") {
    ev.tracker.conf_threshold = e.Probability();
  } else if (k == "tracker.nms_iou") {
    ev.tracker.nms_iou = e.Probability();
  } else if (k == "tracker.confirm_frames") {
    ev.tracker.confirm_frames = static_cast<int>(e.Integer(1));
  } else if (k == "tracker.gate_m") {
    ev.tracker.gate_m = e.Positive();
  } else if (k == "ap.iou_threshold") {
    ev.ap.iou_threshold = e.Number();
    if (!(ev.ap.iou_threshold > 0.0 && ev.ap.iou_threshold < 1.0)) {
      e.Fail("must lie in (0, 1)");
    }
  } else if (k == "ap.iou_kind") {
    if (e.Text() == "bev") {
      ev.ap.iou_kind = IouKind::kBev;
    } else if (e.Text() == "3d") {
      ev.ap.iou_kind = IouKind::k3d;
    } else {
      e.Fail("expected bev or 3d");
    }
  } else if (k == "ap.recall_points") {
    ev.ap.recall_levels = static_cast<int>(e.Integer(1));
    ev.nds.recall_levels = ev.ap.recall_levels;
  } else if (k == "id.d_min") {
    ev.ap.d_min = e.Positive();
    ev.nds.d_min = ev.ap.d_min;
  } else if (k == "nds.threshold_m") {
    ev.nds.threshold_m = e.Positive();
  } else if (k == "nds.v_cap") {
    ev.nds.v_cap = e.Positive();
  } else if (k == "nds.tp_weights") {
    std::stringstream ss(e.Text());
    std::string part;
    std::vector<double> w;
    while (std::getline(ss, part, ',')) {
      Entry piece(k, std::string(Trim(part)), "");
      double v = 0.0;
      try {
        v = piece.Number();
      } catch (const Error&) {
        e.Fail("expected four comma-separated numbers");
      }
      if (v < 0.0) e.Fail("weights must be non-negative");
      w.push_back(v);
    }
    if (w.size() != 4) e.Fail("expected four comma-separated numbers");
    for (int i = 0; i < 4; ++i) ev.nds.tp_weights[i] = w[i];
  } else if (k == "nds.recall_sweep_mode") {
    ev.nds.recall_sweep_mode = e.Bool();
  } else if (k == "eval.max_range_m") {
    ev.max_range_m = e.Number();
  } else if (k.starts_with("penalty.")) {
    const auto kind = ParseInfractionKind(std::string_view(k).substr(8));
    if (!kind) e.Fail("unknown infraction kind");
    const double v = e.Number();
    if (!(v > 0.0 && v <= 1.0)) e.Fail("must lie in (0, 1]");
    ev.penalties[*kind] = v;
  } else if (k == "synth.routes") {
    st.scenario.n_routes = static_cast<int>(e.Integer(1));
  } else if (k == "synth.frames") {
    st.scenario.n_frames = static_cast<int>(e.Integer(2));
  } else if (k == "synth.density") {
    st.scenario.density = e.Number();
    if (st.scenario.density < 0.0) e.Fail("must be non-negative");
  } else if (k == "synth.seed") {
    st.scenario.seed = static_cast<std::uint64_t>(e.Integer(0));
  } else if (k == "synth.timestep") {
    st.scenario.timestep = e.Positive();
  } else if (k == "synth.sensor_range") {
    st.scenario.sensor_range = e.Positive();
  } else if (k == "synth.route_fraction") {
    st.scenario.route_fraction = e.Positive();
    if (st.scenario.route_fraction > 1.0) e.Fail("must lie in (0, 1]");
  } else if (k == "synth.ladder") {
    st.ladder_size = static_cast<int>(e.Integer(1));
  } else if (k == "planner.target_speed") {
    st.planner.target_speed = e.Positive();
  } else if (k == "planner.corridor_width") {
    st.planner.corridor_width = e.Positive();
  } else if (k == "planner.corridor_range") {
    st.planner.corridor_range = e.Positive();
  } else if (k == "planner.horizon") {
    st.planner.horizon = static_cast<int>(e.Integer(1));
  } else if (k == "planner.waypoint_dt") {
    st.planner.waypoint_dt = e.Positive();
  } else if (k == "planner.comfort_decel") {
    st.planner.comfort_decel = e.Positive();
  } else if (k == "planner.standoff") {
    st.planner.standoff = e.Number();
  } else if (k.starts_with("model.")) {
    const std::string_view rest = std::string_view(k).substr(6);
    const auto dot = rest.rfind('.');
    if (dot == std::string_view::npos || dot == 0) e.Fail("unknown key");
    const std::string id(rest.substr(0, dot));
    NoiseModel& m = models[id];
    m.id = id;
    ApplyModelField(m, rest.substr(dot + 1), e);
  } else {
    e.Fail("unknown key");
  }
}

}  // namespace

std::vector<NoiseModel> StudyConfig::ResolvedModels() const {
  if (!models.empty()) return models;
  std::vector<NoiseModel> out;
  for (int r = 0; r < ladder_size; ++r) {
    out.push_back(SeverityLadder(r, ladder_size, scenario.seed));
  }
  return out;
}

Config ParseConfig(std::string_view text, std::string_view source) {
  Config config;
  std::map<std::string, NoiseModel> models;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig,
                  where + ": expected 'key = value', got '" +
                      std::string(line) + "'");
    }
    Entry e(std::string(Trim(line.substr(0, eq))),
            std::string(Trim(line.substr(eq + 1))), where);
    Apply(config, models, e);
  }
  for (auto& [id, m] : models) {
    try {
      ValidateNoiseModel(m);
    } catch (const Error& err) {
      throw Error(ErrorCode::kConfig,
                  std::string(source) + ": model '" + id + "': " + err.what());
    }
    config.study.models.push_back(m);
  }
  return config;
}

Config LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), path.string());
}

}  // namespace odeval
