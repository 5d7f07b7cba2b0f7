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

#include "odeval/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace odeval::oracle {
namespace {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

bool InsideFootprint(const OrientedBox3d& box, double x, double y) {
  const double dx = x - box.center.x();
  const double dy = y - box.center.y();
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double u = c * dx + s * dy;
  const double v = -s * dx + c * dy;
  return std::abs(u) <= box.dims.x() / 2 && std::abs(v) <= box.dims.y() / 2;
}

bool Passes(double value, double threshold, bool higher_is_better) {
  return higher_is_better ? value >= threshold : value <= threshold;
}

bool Better(double a, double b, bool higher_is_better) {
  return higher_is_better ? a > b : a < b;
}

void Enumerate(const Eigen::MatrixXd& cost, const BoolMatrix& allowed, int row,
               std::vector<bool>& used, int pairs, double sum,
               BruteAssignment& best) {
  if (row == cost.rows()) {
    if (pairs > best.pairs || (pairs == best.pairs && sum < best.cost)) {
      best.pairs = pairs;
      best.cost = sum;
    }
    return;
  }
  Enumerate(cost, allowed, row + 1, used, pairs, sum, best);
  for (int c = 0; c < cost.cols(); ++c) {
    if (used[c] || !allowed(row, c)) continue;
    used[c] = true;
    Enumerate(cost, allowed, row + 1, used, pairs + 1, sum + cost(row, c),
              best);
    used[c] = false;
  }
}

}  // namespace

McEstimate McBevIou(const OrientedBox3d& a, const OrientedBox3d& b,
                    std::int64_t samples, std::uint64_t seed) {
  const double area_a = a.dims.x() * a.dims.y();
  const double area_b = b.dims.x() * b.dims.y();
  const OrientedBox3d& small = area_a <= area_b ? a : b;
  const OrientedBox3d& other = area_a <= area_b ? b : a;
  const double area_small = std::min(area_a, area_b);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  const double c = std::cos(small.yaw);
  const double s = std::sin(small.yaw);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double u = unit(rng) * small.dims.x();
    const double v = unit(rng) * small.dims.y();
    const double x = small.center.x() + c * u - s * v;
    const double y = small.center.y() + s * u + c * v;
    if (InsideFootprint(other, x, y)) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  const double inter = area_small * p;
  const double inter_se = area_small * std::sqrt(p * (1 - p) / samples);
  const double uni = area_a + area_b - inter;
  // d(I / (A + B - I)) / dI = (A + B) / U^2.
  return {inter / uni, inter_se * (area_a + area_b) / (uni * uni)};
}

double ExhaustiveAp(const Eigen::MatrixXd& criterion, const BoolMatrix& allowed,
                    const std::vector<double>& confidences, double threshold,
                    bool higher_is_better, int levels) {
  const int n_gt = static_cast<int>(criterion.rows());
  const int n_det = static_cast<int>(criterion.cols());
  if (n_gt == 0) return std::numeric_limits<double>::quiet_NaN();

  std::vector<double> cutoffs(confidences.begin(), confidences.end());
  std::sort(cutoffs.begin(), cutoffs.end(), std::greater<>());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());

  std::vector<double> recalls;
  std::vector<double> precisions;
  for (double cutoff : cutoffs) {
    std::vector<int> kept;
    for (int d = 0; d < n_det; ++d) {
      if (confidences[d] >= cutoff) kept.push_back(d);
    }
    std::stable_sort(kept.begin(), kept.end(), [&](int x, int y) {
      return confidences[x] > confidences[y];
    });
    std::vector<bool> taken(n_gt, false);
    int tp = 0;
    for (int d : kept) {
      int best = -1;
      for (int g = 0; g < n_gt; ++g) {
        if (taken[g] || !allowed(g, d)) continue;
        if (!Passes(criterion(g, d), threshold, higher_is_better)) continue;
        if (best < 0 ||
            Better(criterion(g, d), criterion(best, d), higher_is_better)) {
          best = g;
        }
      }
      if (best >= 0) {
        taken[best] = true;
        ++tp;
      }
    }
    recalls.push_back(static_cast<double>(tp) / n_gt);
    precisions.push_back(static_cast<double>(tp) / kept.size());
  }

  double sum = 0.0;
  for (int k = 1; k <= levels; ++k) {
    const double level = static_cast<double>(k) / levels;
    double best = 0.0;
    for (std::size_t i = 0; i < recalls.size(); ++i) {
      if (recalls[i] >= level - 1e-12) best = std::max(best, precisions[i]);
    }
    sum += best;
  }
  return sum / levels;
}

BruteAssignment BruteForceAssignment(const Eigen::MatrixXd& cost,
                                     const BoolMatrix& allowed) {
  BruteAssignment best;
  best.pairs = -1;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<bool> used(cost.cols(), false);
  Enumerate(cost, allowed, 0, used, 0, 0.0, best);
  return best;
}

}  // namespace odeval::oracle
