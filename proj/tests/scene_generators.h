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

// Random scenes shared by the unit and acceptance tests.

#ifndef SAFESPEED_TESTS_SCENE_GENERATORS_H_
#define SAFESPEED_TESTS_SCENE_GENERATORS_H_

#include <cmath>
#include <numbers>
#include <algorithm>
#include <random>
#include <vector>

#include "safespeed/collision_probability.h"
#include "safespeed/motion_control.h"
#include "safespeed/safe_speed.h"
#include "safespeed/trajectory_prediction.h"
#include "test_oracles.h"

namespace safespeed::testing_scenes {

struct StaticScene {
  OccupancyGrid grid;
  Footprint footprint;
  WeightedParticleSet particles;
  PredictedTrajectory base;
};

// 50 x 50 grid at 0.2 m with sparse blobs, a random route through the middle,
// up to `max_particles` particles with random weights around the estimate and
// a rollout from the estimate at a random speed limit.
inline StaticScene RandomStaticScene(std::mt19937_64& rng, int max_particles = 200) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double res = 0.2;
  OccupancyGrid grid = oracle::RandomGrid(rng, 50, 50, res, Pose(), 0.03 + 0.07 * u(rng));

  const Pose est(3.0 + 4.0 * u(rng), 3.0 + 4.0 * u(rng), 2.0 * std::numbers::pi * u(rng));
  std::vector<Vec2> wp{est.position()};
  double heading = est.yaw;
  for (int k = 0; k < 4; ++k) {
    wp.push_back({wp.back().x + 2.0 * std::cos(heading), wp.back().y + 2.0 * std::sin(heading)});
    heading += 1.2 * (u(rng) - 0.5);
  }
  const ReferenceTrajectory ref(wp);

  const VehicleParams params;
  const double v_lim = 3.0 * u(rng);
  const VehicleState start{est, v_lim * u(rng), 0.0};
  PredictedTrajectory base = Predict(start, ref, v_lim, 2.0, 0.05, params, ControllerGains{});

  std::uniform_int_distribution<int> count(1, max_particles);
  const int n = count(rng);
  const double sxy = 0.05 + 0.25 * u(rng), syaw = 0.02 + 0.2 * u(rng);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Particle> ps;
  for (int i = 0; i < n; ++i) {
    ps.push_back({Pose(est.x + sxy * g(rng), est.y + sxy * g(rng), est.yaw + syaw * g(rng)),
                  0.01 + u(rng)});
  }
  return {std::move(grid), params.RectangleFootprint(), WeightedParticleSet(std::move(ps), est),
          std::move(base)};
}

// Non-decreasing probabilities over the levels of a random speed grid. The
// shapes mix sharp steps, ramps and plateaus, with values drawn so that some
// land exactly on the threshold.
struct MonotoneInstance {
  SpeedGrid grid;
  ThresholdFunction threshold;
  std::vector<double> probabilities;  // one per level

  double operator()(double v) const {
    const auto i = static_cast<std::size_t>(std::lround(v / grid.v_max() * (grid.levels() - 1)));
    return probabilities.at(i);
  }
};

inline MonotoneInstance RandomMonotoneInstance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int levels = 2 + static_cast<int>(u(rng) * 199);
  const SpeedGrid grid(0.5 + 5.0 * u(rng), levels);
  const auto kind = static_cast<ThresholdKind>(rng() % 3);
  const ThresholdFunction tf = ThresholdFunction::Make(kind, 0.05 + 0.4 * u(rng));

  std::vector<double> p(static_cast<std::size_t>(levels));
  const int shape = static_cast<int>(rng() % 3);
  if (shape == 0) {
    // Single 0 -> 1 step at a random level (possibly before 0 or past the end).
    const int cut = static_cast<int>(rng() % (levels + 2)) - 1;
    for (int i = 0; i < levels; ++i) p[i] = i >= cut ? 1.0 : 0.0;
  } else if (shape == 1) {
    double acc = 0.0;
    for (double& x : p) {
      acc += u(rng) < 0.3 ? u(rng) * 0.2 : 0.0;
      x = std::min(1.0, acc);
    }
  } else {
    for (double& x : p) x = u(rng);
    std::sort(p.begin(), p.end());
    // Pin a value onto the threshold to exercise the strict comparison.
    const int j = static_cast<int>(rng() % levels);
    p[j] = std::clamp(Threshold(tf, grid.Level(j)), j > 0 ? p[j - 1] : 0.0,
                      j + 1 < levels ? p[j + 1] : 1.0);
  }
  return {grid, tf, std::move(p)};
}

}  // namespace safespeed::testing_scenes

#endif  // SAFESPEED_TESTS_SCENE_GENERATORS_H_
