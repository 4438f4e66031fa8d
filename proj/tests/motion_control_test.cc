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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "safespeed/vehicle_model.h"

namespace safespeed {
namespace {

constexpr double kPi = std::numbers::pi;

ReferenceTrajectory Straight(double length = 20.0) {
  return ReferenceTrajectory({{0.0, 0.0}, {length, 0.0}});
}

TEST(ReferenceTrajectoryTest, Validation) {
  EXPECT_THROW(ReferenceTrajectory({{0, 0}}), std::invalid_argument);
  EXPECT_THROW(ReferenceTrajectory({{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(ReferenceTrajectory({{0, 0}, {1, 0}}, {-1.0, std::nullopt}),
               std::invalid_argument);
  EXPECT_THROW(ReferenceTrajectory({{0, 0}, {1, 0}}, {std::nullopt}), std::invalid_argument);
}

TEST(ReferenceTrajectoryTest, ArcLengthAndExtrapolation) {
  const ReferenceTrajectory ref({{0, 0}, {3, 4}, {3, 10}});
  EXPECT_DOUBLE_EQ(ref.length(), 11.0);
  EXPECT_DOUBLE_EQ(ref.arc_at(1), 5.0);
  const Vec2 mid = ref.PointAtArc(2.5);
  EXPECT_NEAR(mid.x, 1.5, 1e-12);
  EXPECT_NEAR(mid.y, 2.0, 1e-12);
  const Vec2 past = ref.PointAtArc(13.0);
  EXPECT_NEAR(past.x, 3.0, 1e-12);
  EXPECT_NEAR(past.y, 12.0, 1e-12);
  EXPECT_EQ(ref.PointAtArc(-1.0), (Vec2{0, 0}));
}

TEST(ReferenceTrajectoryTest, SegmentHintIsTighterEnd) {
  const ReferenceTrajectory ref({{0, 0}, {1, 0}, {2, 0}}, {2.0, 1.0, std::nullopt});
  EXPECT_EQ(ref.SegmentSpeedHint(0), 1.0);
  EXPECT_EQ(ref.SegmentSpeedHint(1), 1.0);
  const ReferenceTrajectory none({{0, 0}, {1, 0}});
  EXPECT_FALSE(none.SegmentSpeedHint(0).has_value());
}

TEST(SteeringControlTest, AlignedGivesZero) {
  const VehicleState s{Pose(2.0, 0.0, 0.0), 1.0, 0.0};
  EXPECT_EQ(SteeringControl(s, Straight(), ControllerGains{}, VehicleParams{}), 0.0);
}

TEST(SteeringControlTest, LookaheadDirectlyLeft) {
  // Route runs along +y through the vehicle, which faces +x. Speed 2.4 gives
  // L_d = 0.5 * 2.4 = 1.2 = 2 * wheelbase, so the target sits at alpha = pi/2.
  VehicleParams params;
  params.max_steer = 1.0;
  const ReferenceTrajectory ref({{0.0, -5.0}, {0.0, 5.0}});
  const VehicleState s{Pose(0.0, 0.0, 0.0), 2.4, 0.0};
  EXPECT_NEAR(SteeringControl(s, ref, ControllerGains{}, params), kPi / 4, 1e-12);
}

TEST(SteeringControlTest, ClampsToMaxSteer) {
  const ReferenceTrajectory ref({{0.0, -5.0}, {0.0, 5.0}});
  const VehicleState s{Pose(0.0, 0.0, 0.0), 2.4, 0.0};
  EXPECT_DOUBLE_EQ(SteeringControl(s, ref, ControllerGains{}, VehicleParams{}), 0.6);
}

TEST(SteeringControlTest, BeyondEndGivesZero) {
  const VehicleState s{Pose(25.0, 3.0, 1.0), 1.0, 0.0};
  EXPECT_EQ(SteeringControl(s, Straight(), ControllerGains{}, VehicleParams{}), 0.0);
}

TEST(SteeringControlProperty, MirrorSymmetry) {
  // Reflect route and vehicle about the vehicle's heading axis (here the x
  // axis); the command must flip sign.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<Vec2> wp{{-2.0, u(rng)}};
    for (int k = 1; k < 5; ++k) wp.push_back({wp.back().x + 1.0 + u(rng), 2.0 * u(rng)});
    std::vector<Vec2> mirrored;
    for (const Vec2& p : wp) mirrored.push_back({p.x, -p.y});
    const VehicleState s{Pose(0.0, 0.0, 0.0), 2.0 + u(rng), 0.0};
    const double a = SteeringControl(s, ReferenceTrajectory(wp), ControllerGains{}, VehicleParams{});
    const double b =
        SteeringControl(s, ReferenceTrajectory(mirrored), ControllerGains{}, VehicleParams{});
    EXPECT_DOUBLE_EQ(a, -b);
  }
}

TEST(SpeedControlTest, RegulationPoint) {
  const VehicleState s{Pose(1.0, 0.0, 0.0), 1.5, 0.0};
  EXPECT_EQ(SpeedControl(s, 1.5, Straight(), ControllerGains{}, VehicleParams{}), 0.0);
}

TEST(SpeedControlTest, Saturation) {
  const VehicleState s{Pose(1.0, 0.0, 0.0), 0.0, 0.0};
  const ControllerGains gains;
  const VehicleParams params;
  EXPECT_DOUBLE_EQ(SpeedControl(s, 2.0, Straight(), gains, params),
                   std::min(gains.speed_gain * 2.0, params.max_accel));
  ControllerGains soft;
  soft.speed_gain = 0.25;
  EXPECT_DOUBLE_EQ(SpeedControl(s, 2.0, Straight(), soft, params), 0.5);
}

TEST(SpeedControlTest, StoppingProfileNearEnd) {
  VehicleParams params;
  params.max_decel = 1.0;
  const ReferenceTrajectory ref = Straight(10.0);
  ControllerState memory;
  const PathProjection proj = TrackReference(ref, {9.0, 0.0}, ControllerGains{}, memory);
  const double target = TargetSpeed(4.0, ref, proj, params);
  EXPECT_LE(target, std::sqrt(2.0));
  EXPECT_NEAR(target, std::sqrt(2.0), 1e-12);
}

TEST(SpeedControlTest, HintCapsTarget) {
  const ReferenceTrajectory ref({{0, 0}, {10, 0}, {20, 0}}, {std::nullopt, 0.7, std::nullopt});
  ControllerState memory;
  const PathProjection proj = TrackReference(ref, {15.0, 0.0}, ControllerGains{}, memory);
  EXPECT_DOUBLE_EQ(TargetSpeed(4.0, ref, proj, VehicleParams{}), 0.7);
}

TEST(SpeedControlProperty, ZeroLimitBoundsTravel) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v0(0.0, 4.0), dt(0.01, 0.1);
  const VehicleParams params;
  const ControllerGains gains;
  const ReferenceTrajectory ref = Straight(100.0);
  for (int run = 0; run < 100; ++run) {
    VehicleState s{Pose(1.0, 0.0, 0.0), v0(rng), 0.0};
    const double h = dt(rng);
    // Saturated braking down to max_decel / k_p, then the proportional tail,
    // which adds max_decel / (2 k_p^2) on top of the constant-decel distance.
    const double tail = params.max_decel / (2.0 * gains.speed_gain * gains.speed_gain);
    const double bound = s.speed * s.speed / (2.0 * params.max_decel) + tail + s.speed * h;
    ControllerState memory;
    double travelled = 0.0;
    for (int k = 0; k < 400; ++k) {
      const VehicleState n = Step(s, ComputeControl(s, 0.0, ref, gains, params, memory), h, params);
      travelled += std::hypot(n.pose.x - s.pose.x, n.pose.y - s.pose.y);
      ASSERT_LE(n.speed, s.speed);
      s = n;
    }
    EXPECT_LE(travelled, bound + 1e-9);
  }
}

TEST(TrackReferenceTest, MatchingIsMonotoneOnSelfIntersectingRoute) {
  // A loop that crosses itself at the origin; memory keeps the match on the
  // first pass instead of jumping to the later crossing.
  const ReferenceTrajectory ref({{-3, 0}, {3, 0}, {3, 3}, {0, 3}, {0, -3}});
  ControllerGains gains;
  gains.search_window = 2.0;
  ControllerState memory;
  const PathProjection a = TrackReference(ref, {-0.5, 0.0}, gains, memory);
  EXPECT_EQ(a.segment, 0u);
  const PathProjection b = TrackReference(ref, {0.0, 0.0}, gains, memory);
  EXPECT_EQ(b.segment, 0u);
  EXPECT_NEAR(b.arc, 3.0, 1e-12);
  // Without memory the global search may land anywhere, but the monotone
  // search never goes backwards.
  ControllerState late{3};
  const PathProjection c = TrackReference(ref, {-2.0, 0.0}, gains, late);
  EXPECT_GE(c.segment, 3u);
}

TEST(TrackReferenceTest, LongSegmentDoesNotHideSuccessor) {
  // The first segment is three times the window; once the vehicle is past it
  // the match must move on to the turn.
  const ReferenceTrajectory ref({{0, 0}, {15, 0}, {15, 5}});
  ControllerState memory{0};
  const PathProjection p = TrackReference(ref, {15.3, 1.0}, ControllerGains{}, memory);
  EXPECT_EQ(p.segment, 1u);
  EXPECT_NEAR(p.arc, 16.0, 1e-12);
}

TEST(TrackReferenceTest, BeyondEndFlag) {
  ControllerState memory;
  EXPECT_TRUE(TrackReference(Straight(), {21.0, 0.5}, ControllerGains{}, memory).beyond_end);
  ControllerState fresh;
  EXPECT_FALSE(TrackReference(Straight(), {19.0, 0.5}, ControllerGains{}, fresh).beyond_end);
}

TEST(ControllerGainsTest, Validate) {
  ControllerGains g;
  EXPECT_NO_THROW(g.Validate());
  g.lookahead_min = 4.0;
  EXPECT_THROW(g.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace safespeed
