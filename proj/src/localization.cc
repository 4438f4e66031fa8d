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

#include "safespeed/localization.h"

#include <cmath>
#include <numbers>
#include <vector>

namespace safespeed {
namespace {

double Gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

}  // namespace

WeightedParticleSet EmulateLocalization(const Pose& true_pose,
                                        const LocalizationConfig& cfg,
                                        const CloudBias& bias, std::mt19937_64& rng) {
  const Pose center(true_pose.x + bias.dx, true_pose.y + bias.dy, true_pose.yaw + bias.dyaw);
  std::vector<Particle> particles;
  particles.reserve(static_cast<std::size_t>(cfg.particles));
  for (int i = 0; i < cfg.particles; ++i) {
    const double x = center.x + Gaussian(rng, cfg.sigma_x);
    const double y = center.y + Gaussian(rng, cfg.sigma_y);
    const double yaw = center.yaw + Gaussian(rng, cfg.sigma_yaw);
    particles.push_back({Pose(x, y, yaw), 1.0});
  }
  return WeightedParticleSet::FromWeightedMean(std::move(particles));
}

LocalizationEmulator::LocalizationEmulator(const LocalizationConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(seed), next_jump_(cfg.jump_period) {}

WeightedParticleSet LocalizationEmulator::Sample(const Pose& true_pose, double time) {
  if (cfg_.jump_period > 0.0 && time + 1e-9 >= next_jump_) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double heading = 2.0 * std::numbers::pi * unit(rng_);
    jump_.dx = cfg_.jump_magnitude * std::cos(heading);
    jump_.dy = cfg_.jump_magnitude * std::sin(heading);
    jump_.dyaw = cfg_.jump_yaw * (2.0 * unit(rng_) - 1.0);
    jump_time_ = time;
    while (next_jump_ <= time + 1e-9) next_jump_ += cfg_.jump_period;
  }
  const double decay = std::exp(-(time - jump_time_) / cfg_.jump_decay);
  bias_ = {jump_.dx * decay, jump_.dy * decay, jump_.dyaw * decay};
  return EmulateLocalization(true_pose, cfg_, bias_, rng_);
}

}  // namespace safespeed
