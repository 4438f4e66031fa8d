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

#include "safespeed/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <thread>

#include "safespeed/collision_probability.h"
#include "safespeed/localization.h"
#include "safespeed/motion_control.h"
#include "safespeed/safe_speed.h"
#include "safespeed/vehicle_model.h"

namespace safespeed {
namespace {

constexpr double kGoalSpeed = 0.05;  // m/s

int ResolveWorkers(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<DynamicObstacle> VisibleInBodyFrame(const std::vector<ObstacleSpec>& specs,
                                                const Pose& vehicle, double time) {
  std::vector<DynamicObstacle> out;
  for (const ObstacleSpec& spec : specs) {
    if (spec.appear_at > time + 1e-9) continue;
    std::vector<Vec2> local;
    local.reserve(spec.vertices.size());
    for (const Vec2& v : spec.vertices) local.push_back(InverseTransformPoint(vehicle, v));
    out.emplace_back(std::move(local));
  }
  return out;
}

bool GroundTruthCollides(const Scenario& s, const Pose& pose, double time) {
  const Polygon body = FootprintAt(pose, s.footprint);
  if (PolygonHitsGrid(body, s.grid)) return true;
  for (const ObstacleSpec& spec : s.obstacles) {
    if (spec.appear_at > time + 1e-9) continue;
    if (PolygonHitsPolyline(body, DynamicObstacle(spec.vertices))) return true;
  }
  return false;
}

}  // namespace

std::string_view TerminationName(Termination t) {
  switch (t) {
    case Termination::kDuration:
      return "duration";
    case Termination::kGoalReached:
      return "goal";
    case Termination::kCollision:
      return "collision";
  }
  return "duration";
}

double RunLog::MeanAbsSafeSpeedChange() const {
  if (ticks.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    total += std::abs(ticks[i].v_safe - ticks[i - 1].v_safe);
  }
  return total / static_cast<double>(ticks.size() - 1);
}

RunLog Run(const Scenario& s) {
  ValidateScenario(s);
  const SpeedGrid speed_grid(s.v_max, s.speed_levels);
  const int workers = ResolveWorkers(s.workers);

  RunLog log;
  for (int i = 0; i < speed_grid.levels(); ++i) log.speed_levels.push_back(speed_grid.Level(i));

  // Independent streams so that adding plant noise does not shift the cloud.
  const auto seed_lo = static_cast<std::uint32_t>(s.seed);
  const auto seed_hi = static_cast<std::uint32_t>(s.seed >> 32);
  std::seed_seq loc_seq{seed_lo, seed_hi, std::uint32_t{0x10ca1}};
  std::seed_seq plant_seq{seed_lo, seed_hi, std::uint32_t{0x91a47}};
  std::mt19937_64 loc_seed_rng(loc_seq);
  std::mt19937_64 plant_rng(plant_seq);
  LocalizationEmulator localization(s.localization, loc_seed_rng());

  const RolloutSettings rollout{s.horizon, s.dt, s.vehicle, s.gains};
  const int substeps = std::max(1, static_cast<int>(std::lround(s.control_period / s.dt)));
  const double plant_dt = s.control_period / substeps;
  const auto ticks = static_cast<long>(std::floor(s.duration / s.control_period + 1e-9));

  VehicleState truth = s.start;
  ControllerState plant_memory;

  if (GroundTruthCollides(s, truth.pose, 0.0)) {
    log.termination = Termination::kCollision;
    log.collision_time = 0.0;
    return log;
  }

  for (long k = 0; k < ticks; ++k) {
    const double time = static_cast<double>(k) * s.control_period;
    const std::vector<DynamicObstacle> obstacles =
        VisibleInBodyFrame(s.obstacles, truth.pose, time);
    const WeightedParticleSet cloud = localization.Sample(truth.pose, time);
    const Pose est_tick = cloud.estimated_pose();
    const Pose true_tick = truth.pose;

    VehicleState current = truth;
    current.pose = est_tick;
    const ControllerState rollout_memory = plant_memory;
    const CollisionScene scene{s.grid, s.route, s.footprint, obstacles, rollout, workers};

    std::map<double, CollisionReport> memo;
    auto report_at = [&](double v_lim) -> const CollisionReport& {
      auto it = memo.find(v_lim);
      if (it == memo.end()) {
        it = memo.emplace(v_lim, EvaluateCollision(scene, cloud, current, rollout_memory, v_lim))
                 .first;
      }
      return it->second;
    };
    const CollisionEvaluator eval = [&](double v_lim) { return report_at(v_lim).p_total; };

    TickRecord rec;
    rec.time = time;
    rec.true_pose = true_tick;
    rec.estimated_pose = est_tick;
    rec.effective_sample_size = cloud.EffectiveSampleSize();
    rec.v_actual = truth.speed;

    std::vector<double> scanned;
    const SafeSpeedResult result =
        s.search == SearchMode::kBinary
            ? FindSafeSpeed(eval, s.threshold, speed_grid)
            : BruteForceSafeSpeed(eval, s.threshold, speed_grid, &scanned);
    rec.v_safe = result.v_safe;
    rec.safe_level = result.level;
    rec.unsafe_at_rest = result.unsafe_at_rest;
    rec.evaluations = result.evaluations;

    const CollisionReport& chosen = report_at(speed_grid.Level(std::max(result.level, 0)));
    rec.p_static = chosen.p_static;
    rec.p_dynamic = chosen.p_dynamic;
    rec.p_total = chosen.p_total;

    if (s.heatmap) {
      rec.heatmap.reserve(speed_grid.levels());
      for (int i = 0; i < speed_grid.levels(); ++i) rec.heatmap.push_back(eval(speed_grid.Level(i)));
    }

    {
      ControllerState probe = plant_memory;
      const PathProjection proj = TrackReference(s.route, est_tick.position(), s.gains, probe);
      rec.v_commanded = TargetSpeed(rec.v_safe, s.route, proj, s.vehicle);
    }
    log.ticks.push_back(std::move(rec));

    // The plant runs the same controllers on the estimate, carried forward by
    // the true motion since the tick (odometry).
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int sub = 0; sub < substeps; ++sub) {
      VehicleState believed = truth;
      believed.pose = Compose(est_tick, Relative(true_tick, truth.pose));
      ControlCommand cmd = ComputeControl(believed, result.v_safe, s.route, s.gains,
                                          s.vehicle, plant_memory);
      cmd.accel += s.plant_noise.accel * unit(plant_rng);
      cmd.steer_target += s.plant_noise.steer * unit(plant_rng);
      truth = Step(truth, cmd, plant_dt, s.vehicle);
      const double t_now = time + (sub + 1) * plant_dt;
      if (GroundTruthCollides(s, truth.pose, t_now)) {
        log.termination = Termination::kCollision;
        log.collision_time = t_now;
        return log;
      }
    }

    ControllerState probe = plant_memory;
    const PathProjection proj = TrackReference(s.route, truth.pose.position(), s.gains, probe);
    const double remaining = proj.beyond_end ? 0.0 : s.route.length() - proj.arc;
    if (remaining <= s.goal_tolerance && truth.speed < kGoalSpeed) {
      log.termination = Termination::kGoalReached;
      return log;
    }
  }
  log.termination = Termination::kDuration;
  return log;
}

}  // namespace safespeed
