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

#include "safespeed/vehicle_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace safespeed {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("vehicle.") + name +
                                " must be positive and finite");
  }
}

}  // namespace

void VehicleParams::Validate() const {
  RequirePositive(wheelbase, "wheelbase");
  RequirePositive(max_steer, "max_steer");
  RequirePositive(max_steer_rate, "max_steer_rate");
  RequirePositive(max_accel, "max_accel");
  RequirePositive(max_decel, "max_decel");
  RequirePositive(length, "length");
  RequirePositive(width, "width");
  RequirePositive(rear_overhang, "rear_overhang");
  RequirePositive(v_max_capability, "v_max_capability");
  if (max_steer >= std::numbers::pi / 2) {
    throw std::invalid_argument("vehicle.max_steer must be below pi/2");
  }
  if (rear_overhang >= length) {
    throw std::invalid_argument("vehicle.rear_overhang must be below length");
  }
}

VehicleState Step(const VehicleState& state, const ControlCommand& cmd,
                  double dt, const VehicleParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("step dt must be positive");

  const double max_delta = params.max_steer_rate * dt;
  const double delta = std::clamp(cmd.steer_target - state.steering, -max_delta, max_delta);
  const double steering =
      std::clamp(state.steering + delta, -params.max_steer, params.max_steer);

  const double accel = std::clamp(cmd.accel, -params.max_decel, params.max_accel);
  const double speed = std::max(0.0, state.speed + accel * dt);

  const double yaw = state.pose.yaw + speed * std::tan(steering) / params.wheelbase * dt;
  VehicleState next;
  next.pose = Pose(state.pose.x + speed * std::cos(yaw) * dt,
                   state.pose.y + speed * std::sin(yaw) * dt, yaw);
  next.speed = speed;
  next.steering = steering;
  return next;
}

}  // namespace safespeed
