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

#ifndef SAFESPEED_RUN_OUTPUTS_H_
#define SAFESPEED_RUN_OUTPUTS_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "safespeed/simulator.h"

namespace safespeed {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV renderings of a run log. Numbers use the shortest representation that
// round-trips, so identical logs give identical bytes.
//   run.csv        one row per tick, then '#'-prefixed summary lines
//   heatmap.csv    one row per tick, one column per speed level (P_C)
//   path_speed.csv true x, y and speed per tick
std::string RenderRunCsv(const RunLog& log);
std::string RenderHeatmapCsv(const RunLog& log);
std::string RenderPathSpeedCsv(const RunLog& log);

// Writes the three files into `out_dir`, creating it if needed. Throws
// OutputError naming the path on failure.
void WriteOutputs(const RunLog& log, const std::filesystem::path& out_dir);

}  // namespace safespeed

#endif  // SAFESPEED_RUN_OUTPUTS_H_
