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

#include "odeval/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace odeval {
namespace {

constexpr double kWidth = 480;
constexpr double kHeight = 360;
constexpr double kMargin = 56;

std::string Fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string EscapeXml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Marker(Glyph glyph, double x, double y) {
  constexpr double r = 5;
  std::string pts;
  switch (glyph) {
    case Glyph::kCircle:
      return "<circle cx=\"" + Fixed(x) + "\" cy=\"" + Fixed(y) + "\" r=\"" +
             Fixed(r) + "\"/>";
    case Glyph::kTriangle:
      pts = Fixed(x) + "," + Fixed(y - r) + " " + Fixed(x - r) + "," +
            Fixed(y + r) + " " + Fixed(x + r) + "," + Fixed(y + r);
      break;
    case Glyph::kStar:
      for (int i = 0; i < 10; ++i) {
        const double radius = i % 2 == 0 ? r * 1.4 : r * 0.6;
        const double a = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
        if (i > 0) pts += " ";
        pts += Fixed(x + radius * std::cos(a)) + "," +
               Fixed(y + radius * std::sin(a));
      }
      break;
  }
  return "<polygon points=\"" + pts + "\"/>";
}

struct Range {
  double lo;
  double hi;
};

Range Padded(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

Glyph GlyphFor(std::string_view offline_metric) {
  if (offline_metric == metric::kAde || offline_metric == metric::kFde) {
    return Glyph::kStar;
  }
  if (offline_metric == metric::kIdAp || offline_metric == metric::kIdNds) {
    return Glyph::kTriangle;
  }
  return Glyph::kCircle;
}

std::string ScatterSvg(const MetricTable& table, std::string_view offline,
                       std::string_view online, const CorrelationEntry* entry) {
  const int xi = table.ColumnIndex(offline);
  const int yi = table.ColumnIndex(online);
  std::vector<double> xs;
  std::vector<double> ys;
  if (xi >= 0 && yi >= 0) {
    for (const MetricRow& row : table.rows) {
      if (row.values[xi] && row.values[yi]) {
        xs.push_back(*row.values[xi]);
        ys.push_back(*row.values[yi]);
      }
    }
  }

  std::string title =
      MetricLabel(offline) + " vs " + MetricLabel(online);
  if (entry != nullptr && entry->pearson && entry->spearman) {
    title += " (r=" + Fixed(*entry->pearson, 3) +
             ", rho=" + Fixed(*entry->spearman, 3) + ")";
  }

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Fixed(kWidth, 0) +
      "\" height=\"" + Fixed(kHeight, 0) + "\" font-family=\"sans-serif\" "
      "font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Fixed(kWidth / 2, 0) +
         "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" +
         EscapeXml(title) + "</text>\n";
  const double x0 = kMargin;
  const double x1 = kWidth - 20;
  const double y0 = kHeight - kMargin;
  const double y1 = 36;
  svg += "<line x1=\"" + Fixed(x0) + "\" y1=\"" + Fixed(y0) + "\" x2=\"" +
         Fixed(x1) + "\" y2=\"" + Fixed(y0) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Fixed(x0) + "\" y1=\"" + Fixed(y0) + "\" x2=\"" +
         Fixed(x0) + "\" y2=\"" + Fixed(y1) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + Fixed((x0 + x1) / 2) + "\" y=\"" +
         Fixed(kHeight - 12) + "\" text-anchor=\"middle\">" +
         EscapeXml(MetricLabel(offline)) + "</text>\n";
  svg += "<text x=\"14\" y=\"" + Fixed((y0 + y1) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         Fixed((y0 + y1) / 2) + ")\">" + EscapeXml(MetricLabel(online)) +
         "</text>\n";

  if (!xs.empty()) {
    const Range rx = Padded(xs);
    const Range ry = Padded(ys);
    auto px = [&](double v) { return x0 + (v - rx.lo) / (rx.hi - rx.lo) * (x1 - x0); };
    auto py = [&](double v) { return y0 - (v - ry.lo) / (ry.hi - ry.lo) * (y0 - y1); };
    svg += "<text x=\"" + Fixed(x0) + "\" y=\"" + Fixed(y0 + 14) +
           "\" text-anchor=\"start\">" + FormatNumber(rx.lo) + "</text>\n";
    svg += "<text x=\"" + Fixed(x1) + "\" y=\"" + Fixed(y0 + 14) +
           "\" text-anchor=\"end\">" + FormatNumber(rx.hi) + "</text>\n";
    svg += "<text x=\"" + Fixed(x0 - 4) + "\" y=\"" + Fixed(y0) +
           "\" text-anchor=\"end\">" + FormatNumber(ry.lo) + "</text>\n";
    svg += "<text x=\"" + Fixed(x0 - 4) + "\" y=\"" + Fixed(y1 + 8) +
           "\" text-anchor=\"end\">" + FormatNumber(ry.hi) + "</text>\n";
    svg += "<g fill=\"#1f77b4\" stroke=\"#0b3d66\">\n";
    const Glyph glyph = GlyphFor(offline);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      svg += Marker(glyph, px(xs[i]), py(ys[i])) + "\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> WriteScatterPlots(
    const std::filesystem::path& dir, const MetricTable& table,
    const CorrelationReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "'");
  }
  std::vector<std::filesystem::path> written;
  for (const std::string& off : report.offline) {
    for (const std::string& on : report.online) {
      const auto path = dir / ("scatter_" + off + "_" + on + ".svg");
      std::ofstream out(path, std::ios::binary);
      out << ScatterSvg(table, off, on, report.Find(off, on));
      if (!out) {
        throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace odeval
