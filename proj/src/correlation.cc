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

#include "odeval/correlation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace odeval {
namespace {

constexpr std::string_view kMissing = "NA";

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = nl + 1;
  }
  return out;
}

[[noreturn]] void CsvError(std::string_view source, std::size_t line,
                           const std::string& what) {
  throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                     std::to_string(line) + ": " + what);
}

std::optional<double> ParseCell(std::string_view cell, std::string_view source,
                                std::size_t line) {
  if (cell.empty() || cell == kMissing) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(v)) {
    CsvError(source, line, "bad number '" + std::string(cell) + "'");
  }
  return v;
}

void CheckId(const std::string& id) {
  if (id.find_first_of(",\n\r") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "identifier '" + id + "' contains a CSV separator");
  }
}

std::string FormatFixed(double v, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << v;
  return out.str();
}

}  // namespace

double Pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInsufficientSamples,
                "correlation inputs differ in length");
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                "correlation needs at least 3 samples");
  }
  if (x.maxCoeff() == x.minCoeff() || y.maxCoeff() == y.minCoeff()) {
    throw Error(ErrorCode::kDegenerateInput,
                "correlation input has zero variance");
  }
  const Eigen::VectorXd dx = x.array() - x.mean();
  const Eigen::VectorXd dy = y.array() - y.mean();
  const double sxx = dx.squaredNorm();
  const double syy = dy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateInput,
                "correlation input has zero variance");
  }
  const double r = dx.dot(dy) / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

Eigen::VectorXd AverageRanks(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return x[a] < x[b]; });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double mean_rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double Spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInsufficientSamples,
                "correlation inputs differ in length");
  }
  return Pearson(AverageRanks(x), AverageRanks(y));
}

const std::vector<std::string>& OfflineMetricNames() {
  static const std::vector<std::string> names = {
      "ap",  "aos", "id_ap", "cd_map", "ate",    "ase", "aoe",
      "ave", "nds", "id_nds", "ade",   "fde"};
  return names;
}

const std::vector<std::string>& OnlineMetricNames() {
  static const std::vector<std::string> names = {"ds", "rc", "is",
                                                 "collisions"};
  return names;
}

bool IsOnlineMetric(std::string_view name) {
  const auto& online = OnlineMetricNames();
  return std::find(online.begin(), online.end(), name) != online.end();
}

std::string MetricLabel(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> labels = {
      {"ap", "Average Precision"},
      {"aos", "Avg. Orientation Similarity"},
      {"id_ap", "Inverse-Distance AP"},
      {"cd_map", "Center-Distance mAP"},
      {"ate", "Avg. Translation Error"},
      {"ase", "Avg. Scale Error"},
      {"aoe", "Avg. Orientation Error"},
      {"ave", "Avg. Velocity Error"},
      {"nds", "nuScenes Detection Score"},
      {"id_nds", "Inverse-Distance NDS"},
      {"ade", "Avg. Displacement Error"},
      {"fde", "Final Displacement Error"},
      {"ds", "DS"},
      {"rc", "RC"},
      {"is", "IS"},
      {"collisions", "#Col."},
  };
  const auto it = labels.find(name);
  return it == labels.end() ? std::string(name) : it->second;
}

int MetricTable::ColumnIndex(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string WriteMetricTableCsv(const MetricTable& table) {
  std::string out = "detector_id";
  if (table.per_route) out += ",route_id";
  for (const std::string& c : table.columns) {
    CheckId(c);
    out += ',';
    out += c;
  }
  out += '\n';
  for (const MetricRow& row : table.rows) {
    CheckId(row.detector_id);
    CheckId(row.route_id);
    out += row.detector_id;
    if (table.per_route) {
      out += ',';
      out += row.route_id;
    }
    for (const auto& v : row.values) {
      out += ',';
      out += v ? FormatNumber(*v) : std::string(kMissing);
    }
    out += '\n';
  }
  return out;
}

MetricTable ParseMetricTableCsv(std::string_view text,
                                std::string_view source) {
  const auto lines = SplitLines(text);
  if (lines.empty()) CsvError(source, 1, "empty metric table");
  const auto header = SplitCsvLine(lines[0]);
  if (header.empty() || header[0] != "detector_id") {
    CsvError(source, 1, "first column must be detector_id");
  }
  MetricTable table;
  std::size_t first_value = 1;
  table.per_route = header.size() > 1 && header[1] == "route_id";
  if (table.per_route) first_value = 2;
  for (std::size_t i = first_value; i < header.size(); ++i) {
    if (header[i].empty()) CsvError(source, 1, "empty column name");
    table.columns.emplace_back(header[i]);
  }
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = SplitCsvLine(lines[l]);
    if (cells.size() != header.size()) {
      CsvError(source, l + 1,
               "expected " + std::to_string(header.size()) + " cells, got " +
                   std::to_string(cells.size()));
    }
    MetricRow row;
    row.detector_id = std::string(cells[0]);
    if (table.per_route) row.route_id = std::string(cells[1]);
    for (std::size_t i = first_value; i < cells.size(); ++i) {
      row.values.push_back(ParseCell(cells[i], source, l + 1));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

MetricTable AggregatePerDetector(const MetricTable& table) {
  MetricTable out;
  out.columns = table.columns;
  out.per_route = false;
  const std::size_t k = table.columns.size();
  std::map<std::string, std::pair<std::vector<double>, std::vector<int>>> acc;
  for (const MetricRow& row : table.rows) {
    auto& [sum, count] = acc[row.detector_id];
    sum.resize(k, 0.0);
    count.resize(k, 0);
    for (std::size_t c = 0; c < k && c < row.values.size(); ++c) {
      if (!row.values[c]) continue;
      sum[c] += *row.values[c];
      ++count[c];
    }
  }
  for (const auto& [detector, sc] : acc) {
    MetricRow row;
    row.detector_id = detector;
    for (std::size_t c = 0; c < k; ++c) {
      if (sc.second[c] > 0) {
        row.values.push_back(sc.first[c] / sc.second[c]);
      } else {
        row.values.push_back(std::nullopt);
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

const CorrelationEntry* CorrelationReport::Find(
    std::string_view offline_name, std::string_view online_name) const {
  for (const CorrelationEntry& e : entries) {
    if (e.offline == offline_name && e.online == online_name) return &e;
  }
  return nullptr;
}

CorrelationReport BuildReport(const MetricTable& detector_table,
                              const std::vector<std::string>& offline,
                              const std::vector<std::string>& online) {
  if (detector_table.rows.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                "need >= 3 detectors, got " +
                    std::to_string(detector_table.rows.size()));
  }
  for (const auto* names : {&offline, &online}) {
    for (const std::string& name : *names) {
      if (detector_table.ColumnIndex(name) < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "metric table has no column '" + name + "'");
      }
    }
  }
  CorrelationReport report;
  report.online = online;
  for (const std::string& off : offline) {
    const int ci = detector_table.ColumnIndex(off);
    for (const std::string& on : online) {
      const int cj = detector_table.ColumnIndex(on);
      std::vector<double> xs, ys;
      for (const MetricRow& row : detector_table.rows) {
        if (row.values[ci] && row.values[cj]) {
          xs.push_back(*row.values[ci]);
          ys.push_back(*row.values[cj]);
        }
      }
      CorrelationEntry entry;
      entry.offline = off;
      entry.online = on;
      entry.n = static_cast<int>(xs.size());
      const Eigen::Map<const Eigen::VectorXd> x(xs.data(), xs.size());
      const Eigen::Map<const Eigen::VectorXd> y(ys.data(), ys.size());
      try {
        entry.pearson = Pearson(x, y);
        entry.spearman = Spearman(x, y);
      } catch (const Error& e) {
        entry.pearson.reset();
        entry.spearman.reset();
        entry.error = e.code();
      }
      report.entries.push_back(std::move(entry));
    }
  }

  // Table order: descending |r| against the first online metric.
  report.offline = offline;
  if (!online.empty()) {
    auto key = [&](const std::string& off) {
      const CorrelationEntry* e = report.Find(off, online.front());
      return e && e->pearson ? std::abs(*e->pearson) : -1.0;
    };
    std::stable_sort(report.offline.begin(), report.offline.end(),
                     [&](const std::string& a, const std::string& b) {
                       return key(a) > key(b);
                     });
  }
  std::vector<CorrelationEntry> ordered;
  for (const std::string& off : report.offline) {
    for (const std::string& on : report.online) {
      ordered.push_back(*report.Find(off, on));
    }
  }
  report.entries = std::move(ordered);
  return report;
}

std::string WriteReportCsv(const CorrelationReport& report,
                           bool signed_values) {
  std::string out = "offline,online,pearson_r,spearman_rho,n,status\n";
  for (const CorrelationEntry& e : report.entries) {
    auto cell = [&](const std::optional<double>& v) {
      if (!v) return std::string(kMissing);
      return FormatNumber(signed_values ? *v : std::abs(*v));
    };
    out += e.offline + ',' + e.online + ',' + cell(e.pearson) + ',' +
           cell(e.spearman) + ',' + std::to_string(e.n) + ',' +
           (e.error ? std::string(ErrorCodeName(*e.error)) : "ok") + '\n';
  }
  return out;
}

CorrelationReport ParseReportCsv(std::string_view text,
                                 std::string_view source) {
  const auto lines = SplitLines(text);
  if (lines.empty() ||
      lines[0] != "offline,online,pearson_r,spearman_rho,n,status") {
    CsvError(source, 1, "not a correlation report");
  }
  CorrelationReport report;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = SplitCsvLine(lines[l]);
    if (cells.size() != 6) CsvError(source, l + 1, "expected 6 cells");
    CorrelationEntry e;
    e.offline = std::string(cells[0]);
    e.online = std::string(cells[1]);
    e.pearson = ParseCell(cells[2], source, l + 1);
    e.spearman = ParseCell(cells[3], source, l + 1);
    e.n = std::atoi(std::string(cells[4]).c_str());
    if (cells[5] != "ok") {
      e.error = ErrorCodeFromName(cells[5]);
      if (!e.error) CsvError(source, l + 1, "unknown status");
    }
    if (std::find(report.offline.begin(), report.offline.end(), e.offline) ==
        report.offline.end()) {
      report.offline.push_back(e.offline);
    }
    if (std::find(report.online.begin(), report.online.end(), e.online) ==
        report.online.end()) {
      report.online.push_back(e.online);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string FormatReportTable(const CorrelationReport& report,
                              bool signed_values) {
  std::vector<std::string> header = {"Metric"};
  for (const std::string& on : report.online) {
    header.push_back("r: " + MetricLabel(on));
    header.push_back("rho: " + MetricLabel(on));
  }
  std::vector<std::vector<std::string>> rows;
  for (const std::string& off : report.offline) {
    std::vector<std::string> row = {MetricLabel(off)};
    for (const std::string& on : report.online) {
      const CorrelationEntry* e = report.Find(off, on);
      if (e == nullptr) {
        row.insert(row.end(), 2, std::string(kMissing));
        continue;
      }
      for (const auto* v : {&e->pearson, &e->spearman}) {
        if (v->has_value()) {
          row.push_back(FormatFixed(signed_values ? **v : std::abs(**v), 3));
        } else {
          row.push_back(e->error ? std::string(ErrorCodeName(*e->error))
                                 : std::string(kMissing));
        }
      }
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c]))
            << row[c];
      }
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w + 2;
  out << std::string(total - 2, '-') << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace odeval
