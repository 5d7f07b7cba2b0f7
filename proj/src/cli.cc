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

#include "odeval/cli.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "odeval/config.h"
#include "odeval/correlation.h"
#include "odeval/evaluate.h"
#include "odeval/log_io.h"
#include "odeval/svg.h"
#include "odeval/synth.h"

namespace odeval {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
}

std::vector<std::string> SplitList(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Config LoadOptionalConfig(const std::string& path) {
  return path.empty() ? Config{} : LoadConfig(path);
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
  return buf;
}

struct SynthArgs {
  std::string config;
  std::string out_dir;
  int jobs = 1;
  std::optional<int> routes;
};

int RunSynth(const SynthArgs& args, std::ostream& out) {
  Config config = LoadOptionalConfig(args.config);
  if (args.routes) {
    if (*args.routes < 1) {
      throw Error(ErrorCode::kConfig, "key 'synth.routes': must be at least 1");
    }
    config.study.scenario.n_routes = *args.routes;
  }
  const StudyConfig& study = config.study;
  const std::vector<Scenario> scenarios =
      GenerateScenarios(study.scenario, study.planner);
  const std::vector<NoiseModel> models = study.ResolvedModels();

  const std::size_t n = models.size() * scenarios.size();
  std::vector<RouteLog> logs(n);
  std::vector<NoiseStats> stats(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        logs[i] = SimulateRoute(scenarios[i % scenarios.size()],
                                models[i / scenarios.size()],
                                config.eval.tracker, study.planner,
                                study.scenario.sensor_range, &stats[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(args.jobs, 1); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + args.out_dir + "'");
  }
  for (const RouteLog& log : logs) {
    WriteRouteLog(fs::path(args.out_dir) /
                      (log.detector_id + "__" + log.route_id + ".jsonl"),
                  log);
  }

  out << "wrote " << n << " logs (" << models.size() << " detectors x "
      << scenarios.size() << " routes) to " << args.out_dir << "\n";
  for (std::size_t m = 0; m < models.size(); ++m) {
    NoiseStats total;
    double rc = 0.0;
    int collisions = 0;
    std::int64_t objects = 0;
    for (std::size_t r = 0; r < scenarios.size(); ++r) {
      const std::size_t i = m * scenarios.size() + r;
      total.frames += stats[i].frames;
      total.gt_in_range += stats[i].gt_in_range;
      total.dropped += stats[i].dropped;
      total.false_positives += stats[i].false_positives;
      rc += logs[i].route_completion;
      collisions += static_cast<int>(logs[i].infractions.size());
      for (const FrameRecord& f : logs[i].frames) objects += f.gt_objects.size();
    }
    const double frames = std::max<double>(1.0, total.frames);
    out << models[m].id << ": objects/frame "
        << FormatNumber(std::round(100.0 * objects / frames) / 100.0)
        << ", in range/frame "
        << FormatNumber(std::round(100.0 * total.gt_in_range / frames) / 100.0)
        << ", miss rate "
        << Percent(total.gt_in_range == 0
                       ? 0.0
                       : static_cast<double>(total.dropped) / total.gt_in_range)
        << ", fp/frame "
        << FormatNumber(std::round(100.0 * total.false_positives / frames) / 100.0)
        << ", mean rc "
        << FormatNumber(std::round(10.0 * rc / scenarios.size()) / 10.0)
        << ", infractions " << collisions << "\n";
  }
  return 0;
}

struct EvaluateArgs {
  std::vector<std::string> inputs;
  std::string config;
  int jobs = 1;
  std::string metrics;
  std::string iou_kind;
  std::string out_path;
};

int RunEvaluate(const EvaluateArgs& args, std::ostream& out,
                std::ostream& err) {
  Config config = LoadOptionalConfig(args.config);
  if (args.iou_kind == "bev") {
    config.eval.ap.iou_kind = IouKind::kBev;
  } else if (args.iou_kind == "3d") {
    config.eval.ap.iou_kind = IouKind::k3d;
  }
  const std::vector<std::string> metrics =
      ResolveMetricNames(SplitList(args.metrics));
  std::vector<fs::path> inputs(args.inputs.begin(), args.inputs.end());
  const std::vector<fs::path> paths = ExpandLogPaths(inputs);
  if (paths.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no route logs found");
  }
  std::vector<std::string> warnings;
  const MetricTable table =
      EvaluateLogs(paths, config.eval, metrics, args.jobs, &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  const std::string csv = WriteMetricTableCsv(table);
  if (args.out_path.empty()) {
    out << csv;
  } else {
    WriteFile(args.out_path, csv);
  }
  return 0;
}

struct CorrelateArgs {
  std::string table_path;
  std::string config;
  std::string metrics;
  std::string out_path;
  std::string plots_dir;
  bool signed_values = false;
};

int RunCorrelate(const CorrelateArgs& args, std::ostream& out) {
  LoadOptionalConfig(args.config);
  const MetricTable table = ParseMetricTableCsv(ReadFile(args.table_path),
                                                args.table_path);
  const MetricTable detectors =
      table.per_route ? AggregatePerDetector(table) : table;
  if (detectors.rows.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                "need >= 3 detectors, got " +
                    std::to_string(detectors.rows.size()));
  }

  std::vector<std::string> offline;
  std::vector<std::string> online;
  const std::vector<std::string> requested = SplitList(args.metrics);
  for (const std::string& c : detectors.columns) {
    if (IsOnlineMetric(c)) {
      online.push_back(c);
    } else if (requested.empty() ||
               std::find(requested.begin(), requested.end(), c) !=
                   requested.end()) {
      offline.push_back(c);
    }
  }
  for (const std::string& r : requested) {
    if (detectors.ColumnIndex(r) < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "metric '" + r + "' not in " + args.table_path);
    }
  }
  if (offline.empty() || online.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "table needs at least one offline and one online column");
  }

  const CorrelationReport report = BuildReport(detectors, offline, online);
  out << FormatReportTable(report, args.signed_values);
  if (!args.out_path.empty()) {
    WriteFile(args.out_path, WriteReportCsv(report, args.signed_values));
  }
  if (!args.plots_dir.empty()) {
    WriteScatterPlots(args.plots_dir, detectors, report);
  }
  return 0;
}

int RunReport(const std::string& path, bool signed_values, std::ostream& out) {
  const CorrelationReport report = ParseReportCsv(ReadFile(path), path);
  out << FormatReportTable(report, signed_values);
  return 0;
}

std::string OneLine(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Offline/online evaluation of 3D detectors for driving"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate route logs");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--config", synth.config, "Config file");
  synth_cmd->add_option("--jobs", synth.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--routes", synth.routes, "Override synth.routes");

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Compute metric table");
  eval_cmd->add_option("logs", eval.inputs, "Route logs or directories")
      ->required();
  eval_cmd->add_option("--config", eval.config, "Config file");
  eval_cmd->add_option("--jobs", eval.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--metrics", eval.metrics, "Comma-separated metrics");
  eval_cmd->add_option("--iou-kind", eval.iou_kind, "IoU for AP")
      ->check(CLI::IsMember({"bev", "3d"}));
  eval_cmd->add_option("--out", eval.out_path, "CSV path (default stdout)");

  CorrelateArgs corr;
  CLI::App* corr_cmd =
      app.add_subcommand("correlate", "Correlate offline with online metrics");
  corr_cmd->add_option("table", corr.table_path, "Metric table CSV")
      ->required();
  corr_cmd->add_option("--config", corr.config, "Config file");
  corr_cmd->add_option("--metrics", corr.metrics,
                       "Offline metrics to include");
  corr_cmd->add_option("--out", corr.out_path, "Report CSV path");
  corr_cmd->add_option("--plots", corr.plots_dir, "Directory for SVG scatters");
  corr_cmd->add_flag("--signed-correlations", corr.signed_values,
                     "Keep coefficient signs");

  std::string report_path;
  bool report_signed = false;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Print a saved correlation report");
  report_cmd->add_option("report", report_path, "Report CSV")->required();
  report_cmd->add_flag("--signed-correlations", report_signed,
                       "Keep coefficient signs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid_argument: " << OneLine(e.what()) << "\n";
    return 2;
  }

  try {
    if (synth_cmd->parsed()) return RunSynth(synth, out);
    if (eval_cmd->parsed()) return RunEvaluate(eval, out, err);
    if (corr_cmd->parsed()) return RunCorrelate(corr, out);
    if (report_cmd->parsed()) {
      return RunReport(report_path, report_signed, out);
    }
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << OneLine(e.what())
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: io: " << OneLine(e.what()) << "\n";
    return 1;
  }
  return 2;
}

}  // namespace odeval
