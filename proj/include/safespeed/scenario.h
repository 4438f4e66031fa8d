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

#ifndef SAFESPEED_SCENARIO_H_
#define SAFESPEED_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "safespeed/geometry.h"
#include "safespeed/motion_control.h"
#include "safespeed/safe_speed.h"
#include "safespeed/vehicle_model.h"

namespace safespeed {

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { kMissingFile, kMalformedField, kCrossValidation };

  ScenarioError(Kind kind, std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), kind_(kind), field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  // Dotted path of the offending field, e.g. "prediction.horizon".
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

struct LocalizationConfig {
  double sigma_x = 0.05;    // m
  double sigma_y = 0.05;    // m
  double sigma_yaw = 0.01;  // rad
  int particles = 100;
  // Resampling jumps: every `jump_period` seconds the cloud center is offset
  // by `jump_magnitude` meters in a random direction and by up to `jump_yaw`
  // radians, then relaxes back with time constant `jump_decay`. A period of
  // zero disables jumps.
  double jump_period = 0.0;
  double jump_magnitude = 0.0;
  double jump_yaw = 0.0;
  double jump_decay = 0.5;
};

struct PlantNoise {
  double accel = 0.05;  // m/s^2 standard deviation
  double steer = 0.005; // rad standard deviation
};

struct ObstacleSpec {
  std::vector<Vec2> vertices;  // map frame
  double appear_at = 0.0;      // s
};

enum class SearchMode { kBinary, kScan };

struct Scenario {
  std::string name;
  std::filesystem::path map_image;
  OccupancyGrid grid;
  ReferenceTrajectory route;
  VehicleState start;
  VehicleParams vehicle;
  Footprint footprint;
  ControllerGains gains = {};
  double horizon = 3.0;          // s
  double dt = 0.05;              // s
  double control_period = 0.1;   // s
  double v_max = 4.0;            // m/s
  int speed_levels = 41;
  SearchMode search = SearchMode::kBinary;
  bool heatmap = true;
  ThresholdFunction threshold = {};
  LocalizationConfig localization = {};
  PlantNoise plant_noise = {};
  std::vector<ObstacleSpec> obstacles = {};
  std::uint64_t seed = 1;
  double duration = 30.0;        // s
  double goal_tolerance = 0.3;   // m
  int workers = 1;               // 0 selects the hardware concurrency
};

// Parses and validates a scenario file. The map image path is resolved
// relative to the scenario file. Throws ScenarioError.
Scenario LoadScenario(const std::filesystem::path& path);

// Same, from YAML text; `base_dir` resolves the map image.
Scenario ParseScenario(const std::string& yaml_text,
                       const std::filesystem::path& base_dir);

// Field and cross-field checks, rerun after command-line overrides:
// horizon covers the stop from v_max, a rollout step is shorter than the
// footprint, v_max within the vehicle's capability, positive durations.
void ValidateScenario(const Scenario& scenario);

}  // namespace safespeed

#endif  // SAFESPEED_SCENARIO_H_
