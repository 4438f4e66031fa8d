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

#include "safespeed/trajectory_prediction.h"

#include <cmath>
#include <stdexcept>

namespace safespeed {

double PredictedTrajectory::PathLength() const {
  double total = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    total += std::hypot(samples[i].pose.x - samples[i - 1].pose.x,
                        samples[i].pose.y - samples[i - 1].pose.y);
  }
  return total;
}

std::size_t RolloutSteps(double tau, double dt) {
  // The relative slack absorbs representation error in tau / dt (3 / 0.05).
  return static_cast<std::size_t>(std::ceil(tau / dt - 1e-9));
}

PredictedTrajectory Predict(const VehicleState& start, const ReferenceTrajectory& ref,
                            double v_lim, double tau, double dt,
                            const VehicleParams& params, const ControllerGains& gains,
                            ControllerState memory) {
  if (!(dt > 0.0) || !(tau > 0.0) || dt > tau || !std::isfinite(tau)) {
    throw std::invalid_argument("prediction requires 0 < dt <= tau");
  }
  if (!(v_lim >= 0.0)) throw std::invalid_argument("speed limit must be >= 0");

  const std::size_t steps = RolloutSteps(tau, dt);
  PredictedTrajectory out;
  out.horizon = tau;
  out.samples.reserve(steps + 1);
  out.samples.push_back({0.0, start.pose, start.speed});

  VehicleState state = start;
  for (std::size_t k = 1; k <= steps; ++k) {
    const ControlCommand cmd = ComputeControl(state, v_lim, ref, gains, params, memory);
    state = Step(state, cmd, dt, params);
    out.samples.push_back({static_cast<double>(k) * dt, state.pose, state.speed});
  }
  return out;
}

PredictedTrajectory TransferTrajectory(const PredictedTrajectory& traj,
                                       const Pose& from, const Pose& to) {
  PredictedTrajectory out = traj;
  for (TrajectorySample& s : out.samples) s.pose = Compose(to, Relative(from, s.pose));
  return out;
}

}  // namespace safespeed
