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

#include "odeval/driving_eval.h"

#include <algorithm>
#include <string>

namespace odeval {

PenaltyMap DefaultPenalties() {
  return {
      {InfractionKind::kCollisionPedestrian, 0.50},
      {InfractionKind::kCollisionVehicle, 0.60},
      {InfractionKind::kCollisionStatic, 0.65},
      {InfractionKind::kRedLight, 0.70},
      {InfractionKind::kStopSign, 0.80},
  };
}

double InfractionScore(std::span<const InfractionEvent> infractions,
                       const PenaltyMap& penalties) {
  double score = 1.0;
  for (const InfractionEvent& e : infractions) {
    const auto it = penalties.find(e.kind);
    if (it == penalties.end()) {
      throw Error(ErrorCode::kUnknownInfraction,
                  "no penalty for infraction kind '" +
                      std::string(InfractionKindName(e.kind)) + "'");
    }
    if (!(it->second > 0.0 && it->second <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "penalty factors must lie in (0, 1]");
    }
    score *= it->second;
  }
  return score;
}

double DrivingScore(double route_completion, double infraction_score) {
  if (!(route_completion >= 0.0 && route_completion <= 100.0) ||
      !(infraction_score >= 0.0 && infraction_score <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "route completion or infraction score out of range");
  }
  return route_completion * infraction_score;
}

bool IsCollision(InfractionKind kind) {
  return kind == InfractionKind::kCollisionPedestrian ||
         kind == InfractionKind::kCollisionVehicle ||
         kind == InfractionKind::kCollisionStatic;
}

int CollisionCount(std::span<const InfractionEvent> infractions) {
  return static_cast<int>(
      std::count_if(infractions.begin(), infractions.end(),
                    [](const InfractionEvent& e) { return IsCollision(e.kind); }));
}

}  // namespace odeval
