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

// Displacement errors between the planner's ground-truth-conditioned and
// perception-conditioned trajectories.

#ifndef ODEVAL_PLANNER_METRICS_H_
#define ODEVAL_PLANNER_METRICS_H_

#include <span>

#include "odeval/types.h"

namespace odeval {

// Throws kLengthMismatch on unequal lengths or timesteps.
double FrameAde(const Trajectory& reference, const Trajectory& candidate);
double FrameFde(const Trajectory& reference, const Trajectory& candidate);

// Means over frames carrying both trajectories; frames without them are
// skipped. Throws kNoEligibleFrames if none qualifies.
double RouteAde(std::span<const FrameRecord> frames);
double RouteFde(std::span<const FrameRecord> frames);

}  // namespace odeval

#endif  // ODEVAL_PLANNER_METRICS_H_
