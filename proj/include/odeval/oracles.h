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

// Slow reference implementations used to cross-check the fast paths.
// Nothing here calls into geometry, matching, AP or tracking code; keep it
// that way or the checks stop meaning anything.

#ifndef ODEVAL_ORACLES_H_
#define ODEVAL_ORACLES_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "odeval/types.h"

namespace odeval::oracle {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// BEV IoU by uniform sampling inside the smaller footprint: the hit rate
// in the other box gives the intersection area, the footprint areas are
// exact.
McEstimate McBevIou(const OrientedBox3d& a, const OrientedBox3d& b,
                    std::int64_t samples, std::uint64_t seed);

// AP by enumerating every distinct confidence cutoff, rematching the kept
// detections from scratch at each cutoff and interpolating the resulting
// PR set at `levels` recall levels k/levels.
//
// criterion is n_gt x n_det; a pair can match when allowed(g, d) and the
// criterion clears the threshold (>= when higher_is_better, <= otherwise).
// Class gating goes into `allowed`. Returns NaN when n_gt == 0.
double ExhaustiveAp(const Eigen::MatrixXd& criterion,
                    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>&
                        allowed,
                    const std::vector<double>& confidences, double threshold,
                    bool higher_is_better, int levels = 40);

struct BruteAssignment {
  int pairs = 0;
  double cost = 0.0;
};

// Enumerates every partial matching over allowed cells; best means most
// pairs, then least total cost. With everything allowed this is the
// classic rectangular assignment minimum. Intended for up to 6 x 6.
BruteAssignment BruteForceAssignment(
    const Eigen::MatrixXd& cost,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& allowed);

}  // namespace odeval::oracle

#endif  // ODEVAL_ORACLES_H_
