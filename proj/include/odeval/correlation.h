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

// Metric tables and online/offline correlation analysis.

#ifndef ODEVAL_CORRELATION_H_
#define ODEVAL_CORRELATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "odeval/error.h"

namespace odeval {

// Product-moment correlation. Throws kInsufficientSamples for n < 3 or
// unequal lengths, kDegenerateInput when either side has zero variance.
double Pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y);

// Fractional ranks starting at 1; tied values share their mean rank.
Eigen::VectorXd AverageRanks(const Eigen::Ref<const Eigen::VectorXd>& x);

// Pearson of the average ranks.
double Spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y);

// Column names. Units: ate/ade/fde m, aoe rad, ave m/s, ds/rc percent,
// collisions count; everything else is a unitless ratio.
namespace metric {
inline constexpr std::string_view kAp = "ap";
inline constexpr std::string_view kAos = "aos";
inline constexpr std::string_view kIdAp = "id_ap";
inline constexpr std::string_view kCdMap = "cd_map";
inline constexpr std::string_view kAte = "ate";
inline constexpr std::string_view kAse = "ase";
inline constexpr std::string_view kAoe = "aoe";
inline constexpr std::string_view kAve = "ave";
inline constexpr std::string_view kNds = "nds";
inline constexpr std::string_view kIdNds = "id_nds";
inline constexpr std::string_view kAde = "ade";
inline constexpr std::string_view kFde = "fde";
inline constexpr std::string_view kDs = "ds";
inline constexpr std::string_view kRc = "rc";
inline constexpr std::string_view kIs = "is";
inline constexpr std::string_view kCollisions = "collisions";
}  // namespace metric

const std::vector<std::string>& OfflineMetricNames();
const std::vector<std::string>& OnlineMetricNames();
bool IsOnlineMetric(std::string_view name);

// Human-readable label, e.g. "nuScenes Detection Score" or "#Col.".
std::string MetricLabel(std::string_view name);

struct MetricRow {
  std::string detector_id;
  // Empty for detector-level rows.
  std::string route_id;
  std::vector<std::optional<double>> values;
};

struct MetricTable {
  std::vector<std::string> columns;
  std::vector<MetricRow> rows;
  // False once aggregated to one row per detector.
  bool per_route = true;

  // Index of `name` in columns, or -1.
  int ColumnIndex(std::string_view name) const;
};

// CSV with header "detector_id[,route_id],<columns...>". Missing cells are
// written as "NA". Numbers use the shortest round-trip form.
std::string WriteMetricTableCsv(const MetricTable& table);
MetricTable ParseMetricTableCsv(std::string_view text,
                                std::string_view source = "<csv>");

// Unweighted mean per column over each detector's routes, skipping missing
// cells. Output rows are sorted by detector id.
MetricTable AggregatePerDetector(const MetricTable& table);

struct CorrelationEntry {
  std::string offline;
  std::string online;
  // Signed coefficients; absent when status is not ok.
  std::optional<double> pearson;
  std::optional<double> spearman;
  int n = 0;
  std::optional<ErrorCode> error;
};

struct CorrelationReport {
  // Offline metrics in display order (descending |r| against the first
  // online metric, DS when present).
  std::vector<std::string> offline;
  std::vector<std::string> online;
  std::vector<CorrelationEntry> entries;

  const CorrelationEntry* Find(std::string_view offline_name,
                               std::string_view online_name) const;
};

// Pairwise-complete correlations for every (offline, online) pair of a
// detector-level table. Throws kInsufficientSamples for < 3 detectors.
CorrelationReport BuildReport(const MetricTable& detector_table,
                              const std::vector<std::string>& offline,
                              const std::vector<std::string>& online);

// Columns: offline,online,pearson_r,spearman_rho,n,status. Absolute values
// unless `signed_values`.
std::string WriteReportCsv(const CorrelationReport& report,
                           bool signed_values = false);
CorrelationReport ParseReportCsv(std::string_view text,
                                 std::string_view source = "<csv>");

// Aligned text table, one row per offline metric, r and rho per online
// metric, three decimals.
std::string FormatReportTable(const CorrelationReport& report,
                              bool signed_values = false);

// Shortest round-trip decimal form of `v`.
std::string FormatNumber(double v);

}  // namespace odeval

#endif  // ODEVAL_CORRELATION_H_
