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

#include "safespeed/safe_speed.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace safespeed {

ThresholdKind ParseThresholdKind(std::string_view name) {
  if (name == "constant") return ThresholdKind::kConstant;
  if (name == "linear") return ThresholdKind::kLinear;
  if (name == "exp" || name == "exponential") return ThresholdKind::kExponential;
  throw std::invalid_argument("unknown threshold kind '" + std::string(name) +
                              "' (expected constant, linear or exp)");
}

std::string_view ThresholdKindName(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::kConstant:
      return "constant";
    case ThresholdKind::kLinear:
      return "linear";
    case ThresholdKind::kExponential:
      return "exp";
  }
  return "constant";
}

double ThresholdFunction::DefaultDecay(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::kConstant:
      return 0.0;
    case ThresholdKind::kLinear:
      return 0.025;
    case ThresholdKind::kExponential:
      return std::numbers::ln2;
  }
  return 0.0;
}

ThresholdFunction ThresholdFunction::Make(ThresholdKind kind, double p0,
                                          std::optional<double> k, double p_floor) {
  ThresholdFunction tf{kind, p0, k.value_or(DefaultDecay(kind)), p_floor};
  tf.Validate();
  return tf;
}

void ThresholdFunction::Validate() const {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("threshold.p0 must lie in [0, 1]");
  if (!(p_floor >= 0.0 && p_floor <= 1.0)) {
    throw std::invalid_argument("threshold.p_floor must lie in [0, 1]");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("threshold.k must be finite and >= 0");
  }
}

double Threshold(const ThresholdFunction& tf, double v) {
  double p = tf.p0;
  switch (tf.kind) {
    case ThresholdKind::kConstant:
      break;
    case ThresholdKind::kLinear:
      p = std::max(tf.p_floor, tf.p0 - tf.k * v);
      break;
    case ThresholdKind::kExponential:
      p = std::max(tf.p_floor, tf.p0 * std::exp(-tf.k * v));
      break;
  }
  return std::clamp(p, 0.0, 1.0);
}

SpeedGrid::SpeedGrid(double v_max, int levels) : v_max_(v_max), levels_(levels) {
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    throw std::invalid_argument("speed grid v_max must be positive");
  }
  if (levels < 2) throw std::invalid_argument("speed grid needs at least 2 levels");
}

namespace {

SafeSpeedResult ResultForLevel(const SpeedGrid& grid, int level, int evaluations) {
  SafeSpeedResult r;
  r.level = level;
  r.evaluations = evaluations;
  r.unsafe_at_rest = level < 0;
  r.v_safe = level < 0 ? 0.0 : grid.Level(level);
  return r;
}

}  // namespace

SafeSpeedResult FindSafeSpeed(const CollisionEvaluator& eval,
                              const ThresholdFunction& tf, const SpeedGrid& grid) {
  // Everything at or below `safe` passed, everything at or above `unsafe`
  // failed; -1 and levels() are sentinels that are never evaluated.
  int safe = -1;
  int unsafe = grid.levels();
  int evaluations = 0;
  while (unsafe - safe > 1) {
    const int mid = safe + (unsafe - safe) / 2;
    const double v = grid.Level(mid);
    ++evaluations;
    if (eval(v) < Threshold(tf, v)) {
      safe = mid;
    } else {
      unsafe = mid;
    }
  }
  return ResultForLevel(grid, safe, evaluations);
}

SafeSpeedResult BruteForceSafeSpeed(const CollisionEvaluator& eval,
                                    const ThresholdFunction& tf, const SpeedGrid& grid,
                                    std::vector<double>* probabilities) {
  if (probabilities) probabilities->assign(grid.levels(), 0.0);
  int prefix = -1;
  bool broken = false;
  for (int i = 0; i < grid.levels(); ++i) {
    const double v = grid.Level(i);
    const double p = eval(v);
    if (probabilities) (*probabilities)[i] = p;
    if (!broken && p < Threshold(tf, v)) {
      prefix = i;
    } else {
      broken = true;
    }
  }
  return ResultForLevel(grid, prefix, grid.levels());
}

}  // namespace safespeed
