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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bicycle_oracles.h"

namespace safespeed {
namespace {

TEST(StepTest, RestStaysPut) {
  const VehicleState s{Pose(1, 2, 0.3), 0.0, 0.0};
  EXPECT_EQ(Step(s, {}, 0.1, VehicleParams{}), s);
}

TEST(StepTest, StraightLine) {
  const VehicleState s{Pose(0, 0, 0), 1.0, 0.0};
  const VehicleState n = Step(s, {}, 1.0, VehicleParams{});
  EXPECT_DOUBLE_EQ(n.pose.x, 1.0);
  EXPECT_DOUBLE_EQ(n.pose.y, 0.0);
  EXPECT_DOUBLE_EQ(n.pose.yaw, 0.0);
  EXPECT_DOUBLE_EQ(n.speed, 1.0);
}

TEST(StepTest, StraightLineAlongHeading) {
  const VehicleState s{Pose(0, 0, std::numbers::pi / 3), 2.0, 0.0};
  const VehicleState n = Step(s, {}, 0.5, VehicleParams{});
  EXPECT_NEAR(n.pose.x, 0.5, 1e-15);
  EXPECT_NEAR(n.pose.y, std::sqrt(3.0) / 2, 1e-15);
}

TEST(StepTest, RejectsNonPositiveDt) {
  EXPECT_THROW(Step({}, {}, 0.0, VehicleParams{}), std::invalid_argument);
  EXPECT_THROW(Step({}, {}, -0.1, VehicleParams{}), std::invalid_argument);
}

TEST(StepTest, NoReverse) {
  const VehicleState n = Step({Pose(), 0.1, 0.0}, {-10.0, 0.0}, 1.0, VehicleParams{});
  EXPECT_EQ(n.speed, 0.0);
  EXPECT_EQ(n.pose.x, 0.0);
}

TEST(StepTest, ConstantSteerCircleRadius) {
  for (double delta : {0.1, 0.3, 0.5}) {
    const VehicleParams params;
    const double expected = params.wheelbase / std::tan(delta);
    const auto samples = testing_bicycle::CircleRevolution(delta, 1.0, 0.01, params);
    EXPECT_NEAR(testing_bicycle::FittedRadius(samples), expected, 0.01 * expected)
        << "delta " << delta;
  }
}

TEST(StepTest, ClosureErrorIsFirstOrder) {
  for (double delta : {0.1, 0.3, 0.5}) {
    const VehicleParams params;
    const double e1 = testing_bicycle::ClosureError(delta, 1.0, 0.01, params);
    const double e2 = testing_bicycle::ClosureError(delta, 1.0, 0.005, params);
    EXPECT_GE(e1 / e2, 1.8) << "delta " << delta;
  }
}

TEST(StepProperty, LimitsHoldUnderRandomCommands) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> accel(-5.0, 5.0), steer(-2.0, 2.0), dt(0.001, 0.2);
  const VehicleParams params;
  for (int run = 0; run < 50; ++run) {
    VehicleState s{Pose(), 1.0, 0.0};
    for (int k = 0; k < 200; ++k) {
      const double h = dt(rng);
      const VehicleState n = Step(s, {accel(rng), steer(rng)}, h, params);
      ASSERT_GE(n.speed, 0.0);
      ASSERT_LE(std::abs(n.steering), params.max_steer);
      ASSERT_LE(std::abs(n.steering - s.steering), params.max_steer_rate * h + 1e-12);
      ASSERT_LE(n.speed - s.speed, params.max_accel * h + 1e-12);
      ASSERT_GE(n.speed - s.speed, -params.max_decel * h - 1e-12);
      s = n;
    }
  }
}

TEST(StepProperty, Deterministic) {
  const VehicleState s{Pose(0.3, -0.2, 1.1), 2.5, 0.2};
  const ControlCommand c{0.4, -0.3};
  EXPECT_EQ(Step(s, c, 0.05, VehicleParams{}), Step(s, c, 0.05, VehicleParams{}));
}

TEST(StepProperty, FirstOrderConvergenceOfOneSecondPose) {
  // Fixed maneuver: accelerate while steering toward a constant target.
  const VehicleParams params;
  auto pose_after_one_second = [&](double dt) {
    VehicleState s{Pose(), 0.5, 0.0};
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) s = Step(s, {0.8, 0.4}, dt, params);
    return s.pose;
  };
  const Pose fine = pose_after_one_second(0.0005);
  auto err = [&](double dt) {
    const Pose p = pose_after_one_second(dt);
    return std::hypot(p.x - fine.x, p.y - fine.y);
  };
  const double e1 = err(0.02), e2 = err(0.01), e3 = err(0.005);
  EXPECT_GT(e1 / e2, 1.6);
  EXPECT_LT(e1 / e2, 2.4);
  EXPECT_GT(e2 / e3, 1.6);
  EXPECT_LT(e2 / e3, 2.4);
}

TEST(VehicleParamsTest, ValidateNamesField) {
  VehicleParams p;
  p.wheelbase = 0.0;
  try {
    p.Validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("wheelbase"), std::string::npos);
  }
  EXPECT_NO_THROW(VehicleParams{}.Validate());
}

}  // namespace
}  // namespace safespeed
