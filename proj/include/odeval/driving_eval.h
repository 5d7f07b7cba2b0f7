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

// Online driving metrics from route outcomes.

#ifndef ODEVAL_DRIVING_EVAL_H_
#define ODEVAL_DRIVING_EVAL_H_

#include <map>
#include <span>

#include "odeval/types.h"

namespace odeval {

using PenaltyMap = std::map<InfractionKind, double>;

// Leaderboard-style defaults: pedestrian 0.50, vehicle 0.60, static 0.65,
// red light 0.70, stop sign 0.80.
PenaltyMap DefaultPenalties();

// Product of the penalty factor of every event; 1 for no events. Throws
// kUnknownInfraction when a kind has no factor and kInvalidArgument when a
// factor lies outside (0, 1].
double InfractionScore(std::span<const InfractionEvent> infractions,
                       const PenaltyMap& penalties);

// route_completion [0, 100] times infraction score [0, 1].
double DrivingScore(double route_completion, double infraction_score);

int CollisionCount(std::span<const InfractionEvent> infractions);

bool IsCollision(InfractionKind kind);

}  // namespace odeval

#endif  // ODEVAL_DRIVING_EVAL_H_
