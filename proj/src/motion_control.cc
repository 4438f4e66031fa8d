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

#include "safespeed/motion_control.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace safespeed {

ReferenceTrajectory::ReferenceTrajectory(std::vector<Vec2> waypoints,
                                         std::vector<std::optional<double>> speed_hints)
    : waypoints_(std::move(waypoints)), hints_(std::move(speed_hints)) {
  if (waypoints_.size() < 2) {
    throw std::invalid_argument("reference trajectory needs at least 2 waypoints");
  }
  if (hints_.empty()) hints_.resize(waypoints_.size());
  if (hints_.size() != waypoints_.size()) {
    throw std::invalid_argument("speed hint count does not match waypoint count");
  }
  arc_.reserve(waypoints_.size());
  arc_.push_back(0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const Vec2& a = waypoints_[i - 1];
    const Vec2& b = waypoints_[i];
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(a.x) ||
        !std::isfinite(a.y)) {
      throw std::invalid_argument("waypoint " + std::to_string(i) + " is not finite");
    }
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len == 0.0) {
      throw std::invalid_argument("waypoints " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " coincide");
    }
    arc_.push_back(arc_.back() + len);
  }
  for (const auto& h : hints_) {
    if (h && (!std::isfinite(*h) || *h < 0.0)) {
      throw std::invalid_argument("speed hints must be finite and non-negative");
    }
  }
}

Vec2 ReferenceTrajectory::PointAtArc(double s) const {
  if (s <= 0.0) return waypoints_.front();
  auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  std::size_t seg = it == arc_.end() ? segment_count() - 1
                                     : static_cast<std::size_t>(it - arc_.begin()) - 1;
  seg = std::min(seg, segment_count() - 1);
  const Vec2& a = waypoints_[seg];
  const Vec2& b = waypoints_[seg + 1];
  const double t = (s - arc_[seg]) / (arc_[seg + 1] - arc_[seg]);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

std::optional<double> ReferenceTrajectory::SegmentSpeedHint(std::size_t i) const {
  const auto& a = hints_[i];
  const auto& b = hints_[i + 1];
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

void ControllerGains::Validate() const {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("controller.") + name +
                                  " must be positive and finite");
    }
  };
  require(lookahead_gain, "lookahead_gain");
  require(lookahead_min, "lookahead_min");
  require(lookahead_max, "lookahead_max");
  require(speed_gain, "speed_gain");
  require(search_window, "search_window");
  if (lookahead_max < lookahead_min) {
    throw std::invalid_argument("controller.lookahead_max must be >= lookahead_min");
  }
}

PathProjection TrackReference(const ReferenceTrajectory& ref, const Vec2& position,
                              const ControllerGains& gains, ControllerState& memory) {
  const auto& wp = ref.waypoints();
  const std::size_t first = memory.segment.value_or(0);
  // The window is measured from the end of the matched segment so that a long
  // segment never hides its successor.
  const double limit = memory.segment ? ref.arc_at(first + 1) + gains.search_window
                                      : std::numeric_limits<double>::infinity();

  PathProjection best;
  double best_dist_sq = std::numeric_limits<double>::infinity();
  double best_t_raw = 0.0;
  for (std::size_t i = first; i < ref.segment_count(); ++i) {
    if (i > first && ref.arc_at(i) > limit) break;
    const Vec2& a = wp[i];
    const Vec2& b = wp[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double t_raw = ((position.x - a.x) * dx + (position.y - a.y) * dy) /
                         (dx * dx + dy * dy);
    const double t = std::clamp(t_raw, 0.0, 1.0);
    const Vec2 p{a.x + t * dx, a.y + t * dy};
    const double d_sq = (p.x - position.x) * (p.x - position.x) +
                        (p.y - position.y) * (p.y - position.y);
    if (d_sq < best_dist_sq) {
      best_dist_sq = d_sq;
      best_t_raw = t_raw;
      best.segment = i;
      best.point = p;
      best.arc = ref.arc_at(i) + t * (ref.arc_at(i + 1) - ref.arc_at(i));
    }
  }
  best.beyond_end = best.segment + 1 == ref.segment_count() && best_t_raw > 1.0;
  memory.segment = best.segment;
  return best;
}

double SteeringControl(const VehicleState& state, const ReferenceTrajectory& ref,
                       const PathProjection& projection,
                       const ControllerGains& gains, const VehicleParams& params) {
  if (projection.beyond_end) return 0.0;
  const double lookahead = std::clamp(gains.lookahead_gain * state.speed,
                                      gains.lookahead_min, gains.lookahead_max);
  const Vec2 target = ref.PointAtArc(projection.arc + lookahead);
  const Vec2 local = InverseTransformPoint(state.pose, target);
  const double alpha = std::atan2(local.y, local.x);
  const double steer =
      std::atan(2.0 * params.wheelbase * std::sin(alpha) / lookahead);
  return std::clamp(steer, -params.max_steer, params.max_steer);
}

double SteeringControl(const VehicleState& state, const ReferenceTrajectory& ref,
                       const ControllerGains& gains, const VehicleParams& params) {
  ControllerState memory;
  const PathProjection proj = TrackReference(ref, state.pose.position(), gains, memory);
  return SteeringControl(state, ref, proj, gains, params);
}

double TargetSpeed(double v_lim, const ReferenceTrajectory& ref,
                   const PathProjection& projection, const VehicleParams& params) {
  const double remaining =
      projection.beyond_end ? 0.0 : std::max(0.0, ref.length() - projection.arc);
  double target = std::min(v_lim, std::sqrt(2.0 * params.max_decel * remaining));
  if (auto hint = ref.SegmentSpeedHint(projection.segment)) {
    target = std::min(target, *hint);
  }
  return std::max(0.0, target);
}

double SpeedControl(const VehicleState& state, double v_lim,
                    const ReferenceTrajectory& ref, const PathProjection& projection,
                    const ControllerGains& gains, const VehicleParams& params) {
  const double target = TargetSpeed(v_lim, ref, projection, params);
  return std::clamp(gains.speed_gain * (target - state.speed), -params.max_decel,
                    params.max_accel);
}

double SpeedControl(const VehicleState& state, double v_lim,
                    const ReferenceTrajectory& ref, const ControllerGains& gains,
                    const VehicleParams& params) {
  ControllerState memory;
  const PathProjection proj = TrackReference(ref, state.pose.position(), gains, memory);
  return SpeedControl(state, v_lim, ref, proj, gains, params);
}

ControlCommand ComputeControl(const VehicleState& state, double v_lim,
                              const ReferenceTrajectory& ref,
                              const ControllerGains& gains,
                              const VehicleParams& params, ControllerState& memory) {
  const PathProjection proj = TrackReference(ref, state.pose.position(), gains, memory);
  return {SpeedControl(state, v_lim, ref, proj, gains, params),
          SteeringControl(state, ref, proj, gains, params)};
}

}  // namespace safespeed
