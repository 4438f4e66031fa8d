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

#ifndef SAFESPEED_MOTION_CONTROL_H_
#define SAFESPEED_MOTION_CONTROL_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "safespeed/geometry.h"
#include "safespeed/vehicle_model.h"

namespace safespeed {

// Global route as a polyline of map-frame waypoints, each with an optional
// speed hint.
class ReferenceTrajectory {
 public:
  explicit ReferenceTrajectory(std::vector<Vec2> waypoints,
                               std::vector<std::optional<double>> speed_hints = {});

  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  const std::vector<std::optional<double>>& speed_hints() const { return hints_; }
  std::size_t segment_count() const { return waypoints_.size() - 1; }
  double length() const { return arc_.back(); }
  // Arc length at the start of waypoint `i`.
  double arc_at(std::size_t i) const { return arc_[i]; }

  // Point at arc length `s`. Values beyond the end extrapolate along the last
  // segment; negative values clamp to the first waypoint.
  Vec2 PointAtArc(double s) const;

  // Tightest hint among the two ends of segment `i`, if any.
  std::optional<double> SegmentSpeedHint(std::size_t i) const;

 private:
  std::vector<Vec2> waypoints_;
  std::vector<std::optional<double>> hints_;
  std::vector<double> arc_;
};

struct ControllerGains {
  double lookahead_gain = 0.5;  // s
  double lookahead_min = 0.5;   // m
  double lookahead_max = 3.0;   // m
  double speed_gain = 1.5;      // 1/s
  double search_window = 5.0;   // m of arc searched past the matched segment

  void Validate() const;
};

// Per-rollout tracking memory. An empty segment means the next match is a
// global search; afterwards matching only moves forward.
struct ControllerState {
  std::optional<std::size_t> segment;

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

struct PathProjection {
  std::size_t segment = 0;
  double arc = 0.0;  // arc length of the nearest point
  Vec2 point;
  bool beyond_end = false;
};

// Nearest point on the route, searched forward from the last match inside the
// search window. Updates `memory` with the matched segment.
PathProjection TrackReference(const ReferenceTrajectory& ref, const Vec2& position,
                              const ControllerGains& gains, ControllerState& memory);

// Pure-pursuit steering target, clamped to +-max_steer; 0 once past the end.
double SteeringControl(const VehicleState& state, const ReferenceTrajectory& ref,
                       const PathProjection& projection,
                       const ControllerGains& gains, const VehicleParams& params);
double SteeringControl(const VehicleState& state, const ReferenceTrajectory& ref,
                       const ControllerGains& gains, const VehicleParams& params);

// Speed target min(v_lim, route hint, sqrt(2 * max_decel * remaining)).
double TargetSpeed(double v_lim, const ReferenceTrajectory& ref,
                   const PathProjection& projection, const VehicleParams& params);

// Proportional speed loop on TargetSpeed, saturated at the actuator limits.
double SpeedControl(const VehicleState& state, double v_lim,
                    const ReferenceTrajectory& ref, const PathProjection& projection,
                    const ControllerGains& gains, const VehicleParams& params);
double SpeedControl(const VehicleState& state, double v_lim,
                    const ReferenceTrajectory& ref, const ControllerGains& gains,
                    const VehicleParams& params);

// Both controllers on one shared projection.
ControlCommand ComputeControl(const VehicleState& state, double v_lim,
                              const ReferenceTrajectory& ref,
                              const ControllerGains& gains,
                              const VehicleParams& params, ControllerState& memory);

}  // namespace safespeed

#endif  // SAFESPEED_MOTION_CONTROL_H_
