// Copyright 2026 The safespeed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAFESPEED_TRAJECTORY_PREDICTION_H_
#define SAFESPEED_TRAJECTORY_PREDICTION_H_

#include <cstddef>
#include <vector>

#include "safespeed/geometry.h"
#include "safespeed/motion_control.h"
#include "safespeed/vehicle_model.h"

namespace safespeed {

struct TrajectorySample {
  double time = 0.0;  // s since the start of the rollout
  Pose pose;
  double speed = 0.0;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct PredictedTrajectory {
  std::vector<TrajectorySample> samples;
  double horizon = 0.0;

  const Pose& start() const { return samples.front().pose; }
  double PathLength() const;

  friend bool operator==(const PredictedTrajectory&, const PredictedTrajectory&) = default;
};

// Number of integration steps covering `tau` at `dt`.
std::size_t RolloutSteps(double tau, double dt);

// Closed-loop rollout of the shared controllers and the vehicle model over
// `tau`. Sample 0 is the start state; there are RolloutSteps(tau, dt) + 1
// samples. `memory` seeds the controller's route matching.
// Throws std::invalid_argument unless 0 < dt <= tau.
PredictedTrajectory Predict(const VehicleState& start, const ReferenceTrajectory& ref,
                            double v_lim, double tau, double dt,
                            const VehicleParams& params, const ControllerGains& gains,
                            ControllerState memory = {});

// Rigidly moves `traj` so that the pose `from` lands on `to`: every pose p
// becomes Compose(to, Relative(from, p)). Times and speeds are unchanged.
PredictedTrajectory TransferTrajectory(const PredictedTrajectory& traj,
                                       const Pose& from, const Pose& to);

}  // namespace safespeed

#endif  // SAFESPEED_TRAJECTORY_PREDICTION_H_
