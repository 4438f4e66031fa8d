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

#include "safespeed/collision_probability.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "safespeed/parallel.h"

namespace safespeed {
namespace {

double WeightedIndicatorSum(const WeightedParticleSet& ps,
                            const std::vector<TrajectoryCollision>& flags) {
  // Fixed particle order keeps the sum independent of the worker count.
  double p = 0.0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].collides) p += ps.particles()[i].weight;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

WeightedParticleSet::WeightedParticleSet(std::vector<Particle> particles,
                                         Pose estimated_pose)
    : particles_(std::move(particles)), estimated_pose_(estimated_pose) {
  if (particles_.empty()) throw std::invalid_argument("particle set is empty");
  double total = 0.0;
  for (const Particle& p : particles_) {
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw std::invalid_argument("particle weights must be finite and >= 0");
    }
    total += p.weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("particle weights sum to zero");
  for (Particle& p : particles_) p.weight /= total;
}

WeightedParticleSet WeightedParticleSet::FromWeightedMean(std::vector<Particle> particles) {
  double total = 0.0, x = 0.0, y = 0.0, s = 0.0, c = 0.0;
  for (const Particle& p : particles) {
    total += p.weight;
    x += p.weight * p.pose.x;
    y += p.weight * p.pose.y;
    s += p.weight * std::sin(p.pose.yaw);
    c += p.weight * std::cos(p.pose.yaw);
  }
  Pose mean;
  if (total > 0.0) mean = Pose(x / total, y / total, std::atan2(s, c));
  return WeightedParticleSet(std::move(particles), mean);
}

double WeightedParticleSet::EffectiveSampleSize() const {
  double sum_sq = 0.0;
  for (const Particle& p : particles_) sum_sq += p.weight * p.weight;
  return 1.0 / sum_sq;
}

TrajectoryCollision TrajectoryCollidesStatic(const PredictedTrajectory& traj,
                                             const OccupancyGrid& grid,
                                             const Footprint& fp) {
  for (const TrajectorySample& s : traj.samples) {
    if (PolygonHitsGrid(FootprintAt(s.pose, fp), grid)) return {true, s.time};
  }
  return {};
}

ProbabilityEstimate StaticProbability(const WeightedParticleSet& ps,
                                      const PredictedTrajectory& base_traj,
                                      const OccupancyGrid& grid, const Footprint& fp,
                                      int workers) {
  const Pose& est = ps.estimated_pose();
  const Pose& start = base_traj.start();
  if (std::abs(start.x - est.x) > 1e-6 || std::abs(start.y - est.y) > 1e-6 ||
      std::abs(NormalizeAngle(start.yaw - est.yaw)) > 1e-6) {
    throw std::invalid_argument(
        "base trajectory must start at the estimated pose of the particle set");
  }
  ProbabilityEstimate out;
  out.per_particle.resize(ps.size());
  ParallelFor(ps.size(), workers, [&](std::size_t i) {
    const PredictedTrajectory moved =
        TransferTrajectory(base_traj, est, ps.particles()[i].pose);
    out.per_particle[i] = TrajectoryCollidesStatic(moved, grid, fp);
  });
  out.probability = WeightedIndicatorSum(ps, out.per_particle);
  return out;
}

ProbabilityEstimate DynamicProbability(const WeightedParticleSet& ps,
                                       const VehicleState& current,
                                       const ReferenceTrajectory& ref, double v_lim,
                                       const RolloutSettings& rollout,
                                       std::span<const DynamicObstacle> obstacles,
                                       const Footprint& fp,
                                       const ControllerState& memory, int workers) {
  ProbabilityEstimate out;
  out.per_particle.resize(ps.size());
  // Without obstacles every indicator is zero; skip the rollouts.
  if (obstacles.empty()) return out;

  ParallelFor(ps.size(), workers, [&](std::size_t i) {
    VehicleState start = current;
    start.pose = ps.particles()[i].pose;
    const PredictedTrajectory traj =
        Predict(start, ref, v_lim, rollout.tau, rollout.dt, rollout.params,
                rollout.gains, memory);
    for (const TrajectorySample& s : traj.samples) {
      const Polygon body = FootprintAt(Relative(traj.start(), s.pose), fp);
      const bool hit = std::any_of(
          obstacles.begin(), obstacles.end(),
          [&](const DynamicObstacle& o) { return PolygonHitsPolyline(body, o); });
      if (hit) {
        out.per_particle[i] = {true, s.time};
        return;
      }
    }
  });
  out.probability = WeightedIndicatorSum(ps, out.per_particle);
  return out;
}

CollisionReport MakeReport(const ProbabilityEstimate& static_part,
                           const ProbabilityEstimate& dynamic_part) {
  if (static_part.per_particle.size() != dynamic_part.per_particle.size()) {
    throw std::invalid_argument("static and dynamic estimates cover different particle sets");
  }
  CollisionReport report;
  report.p_static = static_part.probability;
  report.p_dynamic = dynamic_part.probability;
  report.p_total = Combine(report.p_static, report.p_dynamic);
  report.per_particle.reserve(static_part.per_particle.size());
  for (std::size_t i = 0; i < static_part.per_particle.size(); ++i) {
    const TrajectoryCollision& s = static_part.per_particle[i];
    const TrajectoryCollision& d = dynamic_part.per_particle[i];
    ParticleOutcome o{s.collides, d.collides, s.time};
    if (d.time && (!o.first_collision_time || *d.time < *o.first_collision_time)) {
      o.first_collision_time = d.time;
    }
    report.per_particle.push_back(o);
  }
  return report;
}

CollisionReport EvaluateCollision(const CollisionScene& scene,
                                  const WeightedParticleSet& ps,
                                  const VehicleState& current,
                                  const ControllerState& memory, double v_lim) {
  VehicleState start = current;
  start.pose = ps.estimated_pose();
  const PredictedTrajectory base =
      Predict(start, scene.ref, v_lim, scene.rollout.tau, scene.rollout.dt,
              scene.rollout.params, scene.rollout.gains, memory);
  const ProbabilityEstimate st =
      StaticProbability(ps, base, scene.grid, scene.footprint, scene.workers);
  const ProbabilityEstimate dy =
      DynamicProbability(ps, current, scene.ref, v_lim, scene.rollout, scene.obstacles,
                         scene.footprint, memory, scene.workers);
  return MakeReport(st, dy);
}

}  // namespace safespeed
