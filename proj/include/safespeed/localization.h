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

#ifndef SAFESPEED_LOCALIZATION_H_
#define SAFESPEED_LOCALIZATION_H_

#include <cstdint>
#include <random>

#include "safespeed/collision_probability.h"
#include "safespeed/geometry.h"
#include "safespeed/scenario.h"

namespace safespeed {

// Offset of the cloud center from the true pose, in map-frame axes.
struct CloudBias {
  double dx = 0.0;
  double dy = 0.0;
  double dyaw = 0.0;
};

// Draws a uniformly weighted particle cloud around true_pose + bias with
// independent Gaussian noise per axis. The estimate is the weighted mean.
WeightedParticleSet EmulateLocalization(const Pose& true_pose,
                                        const LocalizationConfig& cfg,
                                        const CloudBias& bias, std::mt19937_64& rng);

// Stateful wrapper that adds periodic resampling jumps to the cloud center.
class LocalizationEmulator {
 public:
  LocalizationEmulator(const LocalizationConfig& cfg, std::uint64_t seed);

  WeightedParticleSet Sample(const Pose& true_pose, double time);

  // Bias applied by the most recent Sample call.
  const CloudBias& bias() const { return bias_; }

 private:
  LocalizationConfig cfg_;
  std::mt19937_64 rng_;
  CloudBias jump_;
  CloudBias bias_;
  double jump_time_ = 0.0;
  double next_jump_ = 0.0;
};

}  // namespace safespeed

#endif  // SAFESPEED_LOCALIZATION_H_
