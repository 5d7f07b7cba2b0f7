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

#include "odeval/evaluate.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "odeval/ap_metrics.h"
#include "odeval/driving_eval.h"
#include "odeval/log_io.h"
#include "odeval/nds_metrics.h"
#include "odeval/planner_metrics.h"
#include "odeval/tracking.h"

namespace odeval {
namespace {

using Values = std::map<std::string, double>;

// Metrics computed together; a failure blanks the whole group.
struct MetricGroup {
  std::vector<std::string_view> names;
  std::function<Values(const RouteLog&, const EvalConfig&)> compute;
};

const std::vector<MetricGroup>& Groups() {
  static const std::vector<MetricGroup> groups = {
      {{metric::kAp, metric::kAos},
       [](const RouteLog& log, const EvalConfig& c) {
         const ApSummary s = RouteAp(log.frames, c.ap);
         return Values{{"ap", s.ap}, {"aos", s.aos}};
       }},
      {{metric::kIdAp},
       [](const RouteLog& log, const EvalConfig& c) {
         return Values{{"id_ap", IdAp(log.frames, c.ap)}};
       }},
      {{metric::kCdMap, metric::kAte, metric::kAse, metric::kAoe, metric::kAve,
        metric::kNds},
       [](const RouteLog& log, const EvalConfig& c) {
         const NdsSummary s = RouteNds(log.frames, c.nds, false);
         return Values{{"cd_map", s.cd_map}, {"ate", s.errors.ate},
                       {"ase", s.errors.ase},   {"aoe", s.errors.aoe},
                       {"ave", s.errors.ave},   {"nds", s.nds}};
       }},
      {{metric::kIdNds},
       [](const RouteLog& log, const EvalConfig& c) {
         return Values{{"id_nds", IdNds(log.frames, c.nds)}};
       }},
      {{metric::kAde},
       [](const RouteLog& log, const EvalConfig&) {
         return Values{{"ade", RouteAde(log.frames)}};
       }},
      {{metric::kFde},
       [](const RouteLog& log, const EvalConfig&) {
         return Values{{"fde", RouteFde(log.frames)}};
       }},
      {{metric::kDs, metric::kRc, metric::kIs, metric::kCollisions},
       [](const RouteLog& log, const EvalConfig& c) {
         const double is = InfractionScore(log.infractions, c.penalties);
         return Values{
             {"ds", DrivingScore(log.route_completion, is)},
             {"rc", log.route_completion},
             {"is", is},
             {"collisions", static_cast<double>(CollisionCount(log.infractions))}};
       }},
  };
  return groups;
}

std::string Join(const std::vector<std::string_view>& names) {
  std::string out;
  for (std::string_view n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

}  // namespace

std::vector<std::string> AllMetricNames() {
  std::vector<std::string> out = OfflineMetricNames();
  const auto& online = OnlineMetricNames();
  out.insert(out.end(), online.begin(), online.end());
  return out;
}

std::vector<std::string> ResolveMetricNames(
    const std::vector<std::string>& requested) {
  const std::vector<std::string> all = AllMetricNames();
  if (requested.empty()) return all;
  std::set<std::string> wanted;
  for (const std::string& name : requested) {
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown metric '" + name + "'");
    }
    wanted.insert(name);
  }
  // Canonical order regardless of how they were listed.
  std::vector<std::string> out;
  for (const std::string& name : all) {
    if (wanted.count(name)) out.push_back(name);
  }
  return out;
}

RouteLog FilterByRange(const RouteLog& log, double max_range) {
  if (!(max_range > 0.0)) return log;
  RouteLog out = log;
  for (FrameRecord& f : out.frames) {
    std::erase_if(f.gt_objects, [&](const GroundTruthObject& g) {
      return BevDistanceToEgo(g.box, f.ego_pose) > max_range;
    });
    std::erase_if(f.detections, [&](const Detection& d) {
      return BevDistanceToEgo(d.box, f.ego_pose) > max_range;
    });
  }
  return out;
}

MetricRow EvaluateRoute(const RouteLog& log, const EvalConfig& config,
                        const std::vector<std::string>& metrics,
                        std::vector<std::string>* warnings) {
  MetricRow row;
  row.detector_id = log.detector_id;
  row.route_id = log.route_id;
  row.values.assign(metrics.size(), std::nullopt);

  const RouteLog tracked =
      log.detections_tracked ? log : TrackRoute(log, config.tracker);
  const RouteLog view = FilterByRange(tracked, config.max_range_m);

  for (const MetricGroup& group : Groups()) {
    const bool needed = std::any_of(
        group.names.begin(), group.names.end(), [&](std::string_view n) {
          return std::find(metrics.begin(), metrics.end(), n) != metrics.end();
        });
    if (!needed) continue;
    Values values;
    try {
      values = group.compute(view, config);
    } catch (const Error& e) {
      if (warnings != nullptr) {
        warnings->push_back(log.detector_id + "/" + log.route_id + ": " +
                            Join(group.names) + ": " +
                            std::string(ErrorCodeName(e.code())) + ": " +
                            e.what());
      }
      continue;
    }
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      if (auto it = values.find(metrics[i]); it != values.end()) {
        row.values[i] = it->second;
      }
    }
  }
  return row;
}

MetricTable EvaluateLogs(const std::vector<std::filesystem::path>& paths,
                         const EvalConfig& config,
                         const std::vector<std::string>& metrics, int jobs,
                         std::vector<std::string>* warnings) {
  const std::size_t n = paths.size();
  std::vector<MetricRow> rows(n);
  std::vector<std::vector<std::string>> notes(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = EvaluateRoute(LoadRouteLog(paths[i]), config, metrics,
                                &notes[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int threads =
      static_cast<int>(std::clamp<std::size_t>(std::max(jobs, 1), 1, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Report the first failure in input order so errors are deterministic.
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(rows[a].detector_id, rows[a].route_id) <
           std::tie(rows[b].detector_id, rows[b].route_id);
  });

  MetricTable table;
  table.columns = metrics;
  table.per_route = true;
  for (std::size_t i : order) {
    table.rows.push_back(std::move(rows[i]));
    if (warnings != nullptr) {
      warnings->insert(warnings->end(), notes[i].begin(), notes[i].end());
    }
  }
  return table;
}

std::vector<std::filesystem::path> ExpandLogPaths(
    const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : inputs) {
    std::error_code ec;
    if (std::filesystem::is_directory(p, ec)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace odeval
