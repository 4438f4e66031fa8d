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

#ifndef SAFESPEED_VEHICLE_MODEL_H_
#define SAFESPEED_VEHICLE_MODEL_H_

#include "safespeed/geometry.h"

namespace safespeed {

struct VehicleParams {
  double wheelbase = 0.6;         // m
  double max_steer = 0.6;         // rad, front wheel
  double max_steer_rate = 1.0;    // rad/s
  double max_accel = 1.0;         // m/s^2
  double max_decel = 2.0;         // m/s^2, magnitude
  double length = 0.9;            // m
  double width = 0.5;             // m
  double rear_overhang = 0.15;    // m behind the rear axle
  double v_max_capability = 5.0;  // m/s

  // Throws std::invalid_argument naming the first offending field.
  void Validate() const;

  Footprint RectangleFootprint() const {
    return Footprint::Rectangle(length, width, rear_overhang);
  }
};

// Pose is the rear-axle center in the map frame.
struct VehicleState {
  Pose pose;
  double speed = 0.0;     // m/s, forward positive
  double steering = 0.0;  // rad, front wheel

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct ControlCommand {
  double accel = 0.0;         // m/s^2 demanded
  double steer_target = 0.0;  // rad demanded
};

// One forward-Euler step of the kinematic bicycle. Steering slews toward the
// target at no more than max_steer_rate and is clamped to +-max_steer;
// acceleration is clamped to [-max_decel, max_accel] and speed floored at 0.
// The pose is advanced with the updated speed, steering and heading.
// Throws std::invalid_argument for dt <= 0.
VehicleState Step(const VehicleState& state, const ControlCommand& cmd,
                  double dt, const VehicleParams& params);

}  // namespace safespeed

#endif  // SAFESPEED_VEHICLE_MODEL_H_
