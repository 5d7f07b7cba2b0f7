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

// Route-level evaluation: every offline and online metric for one log.

#ifndef ODEVAL_EVALUATE_H_
#define ODEVAL_EVALUATE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "odeval/config.h"
#include "odeval/correlation.h"
#include "odeval/types.h"

namespace odeval {

// Offline then online metric names, in table column order.
std::vector<std::string> AllMetricNames();

// Throws kInvalidArgument for unknown names. Empty input means all.
std::vector<std::string> ResolveMetricNames(
    const std::vector<std::string>& requested);

// Drops ground truth and detections farther than max_range from the ego.
// A non-positive range keeps everything.
RouteLog FilterByRange(const RouteLog& log, double max_range);

// Runs the tracker on raw logs, applies the range filter and computes the
// requested metrics. A metric that cannot be computed is left empty and a
// one-line reason is appended to `warnings`.
MetricRow EvaluateRoute(const RouteLog& log, const EvalConfig& config,
                        const std::vector<std::string>& metrics,
                        std::vector<std::string>* warnings);

// Loads and evaluates each log, `jobs` at a time. Rows come back sorted by
// (detector_id, route_id) whatever the completion order. Load failures
// throw.
MetricTable EvaluateLogs(const std::vector<std::filesystem::path>& paths,
                         const EvalConfig& config,
                         const std::vector<std::string>& metrics, int jobs,
                         std::vector<std::string>* warnings);

// Expands directories to the *.jsonl files inside them, sorted.
std::vector<std::filesystem::path> ExpandLogPaths(
    const std::vector<std::filesystem::path>& inputs);

}  // namespace odeval

#endif  // ODEVAL_EVALUATE_H_
