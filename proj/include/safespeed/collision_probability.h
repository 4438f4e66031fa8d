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

#ifndef SAFESPEED_COLLISION_PROBABILITY_H_
#define SAFESPEED_COLLISION_PROBABILITY_H_

#include <optional>
#include <span>
#include <vector>

#include "safespeed/geometry.h"
#include "safespeed/motion_control.h"
#include "safespeed/trajectory_prediction.h"
#include "safespeed/vehicle_model.h"

namespace safespeed {

struct Particle {
  Pose pose;
  double weight = 1.0;
};

// Ego-pose hypotheses with weights normalized to sum to one at construction.
class WeightedParticleSet {
 public:
  // Throws std::invalid_argument on an empty set, negative or non-finite
  // weights, or a zero total weight.
  WeightedParticleSet(std::vector<Particle> particles, Pose estimated_pose);

  // Uses the weighted mean as the estimate (circular mean for yaw).
  static WeightedParticleSet FromWeightedMean(std::vector<Particle> particles);

  const std::vector<Particle>& particles() const { return particles_; }
  const Pose& estimated_pose() const { return estimated_pose_; }
  std::size_t size() const { return particles_.size(); }

  // 1 / sum(w^2).
  double EffectiveSampleSize() const;

 private:
  std::vector<Particle> particles_;
  Pose estimated_pose_;
};

struct TrajectoryCollision {
  bool collides = false;
  std::optional<double> time;  // first offending sample

  friend bool operator==(const TrajectoryCollision&, const TrajectoryCollision&) = default;
};

struct ProbabilityEstimate {
  double probability = 0.0;
  std::vector<TrajectoryCollision> per_particle;
};

struct ParticleOutcome {
  bool collides_static = false;
  bool collides_dynamic = false;
  std::optional<double> first_collision_time;
};

struct CollisionReport {
  double p_static = 0.0;
  double p_dynamic = 0.0;
  double p_total = 0.0;
  std::vector<ParticleOutcome> per_particle;
};

// Scans the samples in order and stops at the first footprint that touches
// the grid.
TrajectoryCollision TrajectoryCollidesStatic(const PredictedTrajectory& traj,
                                             const OccupancyGrid& grid,
                                             const Footprint& fp);

// Collision probability against the static map. The rollout predicted from
// the estimated pose is transferred onto every particle and checked; the
// result is the weight of the colliding particles. `base_traj` must start at
// the estimated pose (1e-6 tolerance), otherwise std::invalid_argument.
ProbabilityEstimate StaticProbability(const WeightedParticleSet& ps,
                                      const PredictedTrajectory& base_traj,
                                      const OccupancyGrid& grid, const Footprint& fp,
                                      int workers = 1);

struct RolloutSettings {
  double tau = 3.0;   // s
  double dt = 0.05;   // s
  VehicleParams params;
  ControllerGains gains;
};

// Collision probability against obstacles given in the body frame of the
// estimated pose. Every particle gets its own rollout from its pose (speed
// and steering from `current`); the rollout's relative profile, i.e. each
// sample expressed in the frame of its own start, is checked against the
// obstacles.
ProbabilityEstimate DynamicProbability(const WeightedParticleSet& ps,
                                       const VehicleState& current,
                                       const ReferenceTrajectory& ref, double v_lim,
                                       const RolloutSettings& rollout,
                                       std::span<const DynamicObstacle> obstacles,
                                       const Footprint& fp,
                                       const ControllerState& memory = {},
                                       int workers = 1);

// 1 - (1 - p_static) * (1 - p_dynamic).
inline double Combine(double p_static, double p_dynamic) {
  return 1.0 - (1.0 - p_static) * (1.0 - p_dynamic);
}

CollisionReport MakeReport(const ProbabilityEstimate& static_part,
                           const ProbabilityEstimate& dynamic_part);

// Everything a collision evaluation needs besides the particle cloud and the
// speed limit. References must outlive the scene.
struct CollisionScene {
  const OccupancyGrid& grid;
  const ReferenceTrajectory& ref;
  const Footprint& footprint;
  std::span<const DynamicObstacle> obstacles;
  RolloutSettings rollout;
  int workers = 1;
};

// Full pipeline for one speed limit: predict from the estimated pose, static
// probability by transfer, dynamic probability by per-particle rollouts, then
// Combine.
CollisionReport EvaluateCollision(const CollisionScene& scene,
                                  const WeightedParticleSet& ps,
                                  const VehicleState& current,
                                  const ControllerState& memory, double v_lim);

}  // namespace safespeed

#endif  // SAFESPEED_COLLISION_PROBABILITY_H_
