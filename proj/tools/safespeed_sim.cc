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

// Closed-loop safe speed simulator.
//
//   safespeed_sim run --scenario scenarios/narrow_gap.yaml --out out/

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "safespeed/run_outputs.h"
#include "safespeed/scenario.h"
#include "safespeed/simulator.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitCollision = 3;

struct RunOptions {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> threshold;
  std::optional<double> p0;
  std::optional<double> k;
  std::optional<int> levels;
  std::optional<std::string> search;
  std::optional<std::string> heatmap;
  std::optional<int> workers;
};

void ApplyOverrides(const RunOptions& opt, safespeed::Scenario& s) {
  using safespeed::ScenarioError;
  if (opt.seed) s.seed = *opt.seed;
  if (opt.levels) s.speed_levels = *opt.levels;
  if (opt.workers) s.workers = *opt.workers;
  if (opt.search) s.search = *opt.search == "scan" ? safespeed::SearchMode::kScan
                                                   : safespeed::SearchMode::kBinary;
  if (opt.heatmap) s.heatmap = *opt.heatmap == "on";

  safespeed::ThresholdFunction tf = s.threshold;
  if (opt.threshold) {
    const safespeed::ThresholdKind kind = safespeed::ParseThresholdKind(*opt.threshold);
    if (kind != tf.kind) tf.k = safespeed::ThresholdFunction::DefaultDecay(kind);
    tf.kind = kind;
  }
  if (opt.p0) tf.p0 = *opt.p0;
  if (opt.k) tf.k = *opt.k;
  try {
    tf.Validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(ScenarioError::Kind::kMalformedField, "threshold", e.what());
  }
  s.threshold = tf;
  safespeed::ValidateScenario(s);
}

int RunCommand(const RunOptions& opt) {
  safespeed::Scenario scenario = safespeed::LoadScenario(opt.scenario);
  ApplyOverrides(opt, scenario);

  const safespeed::RunLog log = safespeed::Run(scenario);
  safespeed::WriteOutputs(log, opt.out);

  std::cout << "scenario:       " << scenario.name << "\n"
            << "ticks:          " << log.ticks.size() << "\n"
            << "termination:    " << safespeed::TerminationName(log.termination) << "\n"
            << "mean |dV_s|:    " << log.MeanAbsSafeSpeedChange() << " m/s per tick\n"
            << "outputs:        " << opt.out << "\n";
  if (log.ground_truth_collision()) {
    std::cerr << "ground-truth collision at t = " << *log.collision_time << " s\n";
    return kExitCollision;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe speed control under ego-pose uncertainty: closed-loop simulator"};
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write CSV outputs");
  run->add_option("--scenario", opt.scenario, "Scenario YAML file")->required();
  run->add_option("--out", opt.out, "Output directory")->required();
  run->add_option("--seed", opt.seed, "Random seed override");
  run->add_option("--threshold", opt.threshold, "Threshold function kind")
      ->check(CLI::IsMember({"constant", "linear", "exp"}));
  run->add_option("--p0", opt.p0, "Threshold value at zero speed");
  run->add_option("--k", opt.k, "Threshold decay per m/s");
  run->add_option("--levels", opt.levels, "Number of speed levels")->check(CLI::Range(2, 100000));
  run->add_option("--search", opt.search, "Safe speed search")
      ->check(CLI::IsMember({"binary", "scan"}));
  run->add_option("--heatmap", opt.heatmap, "Evaluate every speed level per tick")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--workers", opt.workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    return RunCommand(opt);
  } catch (const safespeed::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
