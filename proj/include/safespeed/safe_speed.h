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

#ifndef SAFESPEED_SAFE_SPEED_H_
#define SAFESPEED_SAFE_SPEED_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace safespeed {

enum class ThresholdKind { kConstant, kLinear, kExponential };

// Accepts "constant", "linear", "exp" and "exponential".
ThresholdKind ParseThresholdKind(std::string_view name);
std::string_view ThresholdKindName(ThresholdKind kind);

// Acceptable collision probability as a non-increasing function of the
// speed limit.
struct ThresholdFunction {
  ThresholdKind kind = ThresholdKind::kConstant;
  double p0 = 0.2;       // value at v = 0
  double k = 0.0;        // decay, 1/(m/s)
  double p_floor = 0.0;  // lower clip

  // Default decay per kind: the exponential halves every 1 m/s, the linear
  // loses 0.025 per m/s.
  static double DefaultDecay(ThresholdKind kind);
  static ThresholdFunction Make(ThresholdKind kind, double p0,
                                std::optional<double> k = std::nullopt,
                                double p_floor = 0.0);

  // Throws std::invalid_argument unless p0, p_floor in [0, 1] and k >= 0.
  void Validate() const;
};

// constant: p0; linear: max(floor, p0 - k v); exponential: max(floor, p0 e^{-k v}).
double Threshold(const ThresholdFunction& tf, double v);

// Evenly spaced candidate speed limits 0, ..., v_max.
class SpeedGrid {
 public:
  // Throws std::invalid_argument unless v_max > 0 and levels >= 2.
  SpeedGrid(double v_max, int levels);

  double v_max() const { return v_max_; }
  int levels() const { return levels_; }
  double Level(int i) const { return v_max_ * i / (levels_ - 1); }

 private:
  double v_max_;
  int levels_;
};

// Maps a candidate speed limit to a collision probability.
using CollisionEvaluator = std::function<double(double v_lim)>;

struct SafeSpeedResult {
  double v_safe = 0.0;
  int level = -1;  // -1 when even the zero limit is unsafe
  int evaluations = 0;
  bool unsafe_at_rest = false;
};

// Largest level whose probability is strictly below the threshold, assuming
// the probability does not decrease with the limit. Uses at most
// ceil(log2(levels + 1)) evaluations.
SafeSpeedResult FindSafeSpeed(const CollisionEvaluator& eval,
                              const ThresholdFunction& tf, const SpeedGrid& grid);

// Evaluates every level in ascending order and returns the top of the safe
// prefix. `probabilities`, when given, receives every evaluation.
SafeSpeedResult BruteForceSafeSpeed(const CollisionEvaluator& eval,
                                    const ThresholdFunction& tf, const SpeedGrid& grid,
                                    std::vector<double>* probabilities = nullptr);

}  // namespace safespeed

#endif  // SAFESPEED_SAFE_SPEED_H_
