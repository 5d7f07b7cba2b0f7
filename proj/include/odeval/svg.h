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

// Minimal SVG scatter plots of offline against online metrics.

#ifndef ODEVAL_SVG_H_
#define ODEVAL_SVG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "odeval/correlation.h"

namespace odeval {

enum class Glyph { kCircle, kTriangle, kStar };

// Stars for planner metrics, triangles for inverse-distance variants,
// circles for the rest.
Glyph GlyphFor(std::string_view offline_metric);

// One point per detector row with both cells present.
std::string ScatterSvg(const MetricTable& detector_table,
                       std::string_view offline, std::string_view online,
                       const CorrelationEntry* entry);

// Writes scatter_<offline>_<online>.svg for every report pair; returns the
// written paths.
std::vector<std::filesystem::path> WriteScatterPlots(
    const std::filesystem::path& dir, const MetricTable& detector_table,
    const CorrelationReport& report);

}  // namespace odeval

#endif  // ODEVAL_SVG_H_
