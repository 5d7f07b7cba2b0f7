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

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "odeval/correlation.h"
#include "test_util.h"

namespace odeval {
namespace {

using testing::CodeOf;
using testing::Rng;

Eigen::VectorXd V(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(PearsonTest, Examples) {
  EXPECT_NEAR(Pearson(V({1, 2, 3}), V({2, 4, 6})), 1.0, 1e-15);
  EXPECT_NEAR(Pearson(V({1, 2, 3}), V({3, 2, 1})), -1.0, 1e-15);
  EXPECT_NEAR(Pearson(V({1, 2, 3, 4}), V({1, 3, 2, 4})), 0.8, 1e-12);
  EXPECT_EQ(CodeOf([] { Pearson(V({1, 1, 1}), V({1, 2, 3})); }),
            ErrorCode::kDegenerateInput);
  EXPECT_EQ(CodeOf([] { Pearson(V({1, 2}), V({1, 2})); }),
            ErrorCode::kInsufficientSamples);
  EXPECT_EQ(CodeOf([] { Pearson(V({1, 2, 3}), V({1, 2, 3, 4})); }),
            ErrorCode::kInsufficientSamples);
}

TEST(SpearmanTest, Examples) {
  EXPECT_NEAR(Spearman(V({1, 2, 3, 4}), V({1, 4, 9, 16})), 1.0, 1e-15);
  EXPECT_NEAR(Spearman(V({1, 2, 3, 4}), V({1, 3, 2, 4})), 0.8, 1e-12);
  const Eigen::VectorXd r = AverageRanks(V({10, 20, 20, 5}));
  EXPECT_EQ(r, V({2, 3.5, 3.5, 1}));
}

TEST(CorrelationTest, Properties) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.Int(3, 20);
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.Uniform(-5, 5);
      y[i] = rng.Coin(0.2) ? std::round(x[i]) : rng.Uniform(-5, 5);
    }
    const double r = Pearson(x, y);
    const double rho = Spearman(x, y);
    ASSERT_LE(std::abs(r), 1.0 + 1e-12);
    ASSERT_LE(std::abs(rho), 1.0 + 1e-12);
    ASSERT_NEAR(r, Pearson(y, x), 1e-12);
    // Affine maps with positive slope keep r; monotone maps keep rho.
    const double a = rng.Uniform(0.1, 10);
    const double b = rng.Uniform(-10, 10);
    ASSERT_NEAR(Pearson((a * x.array() + b).matrix(), y), r, 1e-9);
    ASSERT_NEAR(Pearson((-a * x.array() + b).matrix(), y), -r, 1e-9);
    ASSERT_NEAR(Spearman(x.array().exp().matrix(), y), rho, 1e-12);
  }
}

MetricTable DetectorTable() {
  MetricTable t;
  t.columns = {"ap", "nds", "ds", "collisions"};
  t.per_route = false;
  t.rows = {{"a", "", {0.1, 0.2, 10.0, 3.0}},
            {"b", "", {0.5, 0.2, 30.0, 1.0}},
            {"c", "", {0.9, 0.2, 80.0, std::nullopt}}};
  return t;
}

TEST(BuildReportTest, HandComputedThreeDetectors) {
  const CorrelationReport report =
      BuildReport(DetectorTable(), {"nds", "ap"}, {"ds", "collisions"});
  const CorrelationEntry* e = report.Find("ap", "ds");
  ASSERT_NE(e, nullptr);
  ASSERT_TRUE(e->pearson.has_value());
  EXPECT_NEAR(*e->pearson, 28.0 / std::sqrt(832.0), 1e-12);
  EXPECT_NEAR(*e->spearman, 1.0, 1e-12);
  EXPECT_EQ(e->n, 3);
  // nds is constant across detectors.
  const CorrelationEntry* flat = report.Find("nds", "ds");
  ASSERT_NE(flat, nullptr);
  EXPECT_FALSE(flat->pearson.has_value());
  EXPECT_EQ(flat->error, ErrorCode::kDegenerateInput);
  // Pairwise-complete: only two detectors report collisions.
  const CorrelationEntry* col = report.Find("ap", "collisions");
  EXPECT_EQ(col->n, 2);
  EXPECT_EQ(col->error, ErrorCode::kInsufficientSamples);
  EXPECT_EQ(report.offline, (std::vector<std::string>{"ap", "nds"}));
}

TEST(BuildReportTest, TooFewDetectors) {
  MetricTable t = DetectorTable();
  t.rows.pop_back();
  EXPECT_EQ(CodeOf([&] { BuildReport(t, {"ap"}, {"ds"}); }),
            ErrorCode::kInsufficientSamples);
  EXPECT_EQ(CodeOf([&] { BuildReport(DetectorTable(), {"ade"}, {"ds"}); }),
            ErrorCode::kInvalidArgument);
}

TEST(BuildReportTest, IdenticalDetectorsAreDegenerate) {
  MetricTable t;
  t.columns = {"ap", "ds"};
  for (const char* id : {"a", "b", "c", "d"}) t.rows.push_back({id, "", {0.5, 60.0}});
  const CorrelationReport report = BuildReport(t, {"ap"}, {"ds"});
  EXPECT_EQ(report.entries.at(0).error, ErrorCode::kDegenerateInput);
}

TEST(MetricTableCsvTest, RoundTrip) {
  MetricTable t;
  t.columns = {"ap", "ds"};
  t.rows = {{"det_a", "route_00", {0.1 + 0.2, std::nullopt}},
            {"det_a", "route_01", {1.0 / 3.0, 55.5}},
            {"det_b", "route_00", {0.0, 1e-300}}};
  const std::string csv = WriteMetricTableCsv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "detector_id,route_id,ap,ds");
  EXPECT_NE(csv.find("NA"), std::string::npos);
  const MetricTable back = ParseMetricTableCsv(csv);
  ASSERT_EQ(back.rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.rows[i].values, t.rows[i].values);
  }
  EXPECT_EQ(WriteMetricTableCsv(back), csv);
  EXPECT_EQ(CodeOf([] { ParseMetricTableCsv("detector_id,ap\nx,abc\n"); }),
            ErrorCode::kParse);
}

TEST(AggregateTest, MeansSkipMissing) {
  MetricTable t;
  t.columns = {"ap", "ds"};
  t.rows = {{"b", "r0", {0.2, 10.0}},
            {"a", "r0", {0.4, std::nullopt}},
            {"a", "r1", {0.6, 50.0}},
            {"b", "r1", {0.4, std::nullopt}}};
  const MetricTable agg = AggregatePerDetector(t);
  EXPECT_FALSE(agg.per_route);
  ASSERT_EQ(agg.rows.size(), 2u);
  EXPECT_EQ(agg.rows[0].detector_id, "a");
  EXPECT_NEAR(*agg.rows[0].values[0], 0.5, 1e-12);
  EXPECT_EQ(*agg.rows[0].values[1], 50.0);
  EXPECT_NEAR(*agg.rows[1].values[0], 0.3, 1e-12);
  EXPECT_EQ(*agg.rows[1].values[1], 10.0);
}

TEST(ReportCsvTest, RoundTripAndAbsoluteValues) {
  const CorrelationReport report =
      BuildReport(DetectorTable(), {"ap", "nds"}, {"ds", "collisions"});
  const std::string csv = WriteReportCsv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "offline,online,pearson_r,spearman_rho,n,status");
  const CorrelationReport back = ParseReportCsv(csv);
  ASSERT_EQ(back.entries.size(), report.entries.size());
  EXPECT_EQ(WriteReportCsv(back), csv);
  EXPECT_EQ(back.offline, report.offline);
}

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(0.5), "0.5");
  EXPECT_EQ(FormatNumber(100), "100");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(FormatNumber(v)), v);
}

std::string ReadFixture() {
  std::ifstream in(std::string(ODEVAL_SOURCE_DIR) +
                   "/tests/fixtures/reference_detectors.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ReferenceFixtureTest, ReproducesTargetCorrelations) {
  const MetricTable table = ParseMetricTableCsv(ReadFixture());
  ASSERT_EQ(table.rows.size(), 16u);
  const CorrelationReport report = BuildReport(
      table, {"ap", "ade", "nds", "fde", "aos"}, {"ds", "collisions"});
  EXPECT_EQ(report.offline,
            (std::vector<std::string>{"nds", "ap", "ade", "aos", "fde"}));
  const double ds[] = {0.852, 0.805, 0.784, 0.742, 0.703};
  const double col[] = {0.907, 0.903, 0.770, 0.894, 0.653};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(std::abs(*report.Find(report.offline[i], "ds")->pearson),
                ds[i], 1e-3);
    EXPECT_NEAR(
        std::abs(*report.Find(report.offline[i], "collisions")->pearson),
        col[i], 1e-3);
  }
}

}  // namespace
}  // namespace odeval
