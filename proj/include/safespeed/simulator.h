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

#ifndef SAFESPEED_SIMULATOR_H_
#define SAFESPEED_SIMULATOR_H_

#include <optional>
#include <string_view>
#include <vector>

#include "safespeed/geometry.h"
#include "safespeed/scenario.h"

namespace safespeed {

struct TickRecord {
  double time = 0.0;
  Pose true_pose;
  Pose estimated_pose;
  double effective_sample_size = 0.0;
  double v_safe = 0.0;
  int safe_level = -1;
  bool unsafe_at_rest = false;
  int evaluations = 0;
  double v_commanded = 0.0;  // speed-loop target under v_safe
  double v_actual = 0.0;
  // Probabilities at the selected level (level 0 when nothing is safe).
  double p_static = 0.0;
  double p_dynamic = 0.0;
  double p_total = 0.0;
  // P_C at every speed level, empty when the heatmap is disabled.
  std::vector<double> heatmap;
};

enum class Termination { kDuration, kGoalReached, kCollision };
std::string_view TerminationName(Termination t);

struct RunLog {
  std::vector<double> speed_levels;
  std::vector<TickRecord> ticks;
  Termination termination = Termination::kDuration;
  std::optional<double> collision_time;

  bool ground_truth_collision() const { return collision_time.has_value(); }
  // Mean |v_safe[k] - v_safe[k-1]| over consecutive ticks; 0 with < 2 ticks.
  double MeanAbsSafeSpeedChange() const;
};

// Closed-loop drive: each control tick samples the localization cloud,
// searches the safe speed, optionally fills the heatmap row, then steps the
// noisy ground-truth plant under the shared controllers. Stops at the run
// duration, at the goal, or on a ground-truth collision.
RunLog Run(const Scenario& scenario);

}  // namespace safespeed

#endif  // SAFESPEED_SIMULATOR_H_
