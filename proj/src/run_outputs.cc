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

#include "safespeed/run_outputs.h"

#include <fmt/format.h>

#include <fstream>
#include <iterator>
#include <system_error>

namespace safespeed {
namespace {

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

}  // namespace

std::string RenderRunCsv(const RunLog& log) {
  std::string out =
      "time,true_x,true_y,true_yaw,est_x,est_y,est_yaw,ess,v_safe,safe_level,"
      "unsafe_at_rest,evaluations,v_commanded,v_actual,p_static,p_dynamic,p_total\n";
  auto it = std::back_inserter(out);
  for (const TickRecord& r : log.ticks) {
    fmt::format_to(it, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.time,
                   r.true_pose.x, r.true_pose.y, r.true_pose.yaw, r.estimated_pose.x,
                   r.estimated_pose.y, r.estimated_pose.yaw, r.effective_sample_size,
                   r.v_safe, r.safe_level, r.unsafe_at_rest ? 1 : 0, r.evaluations,
                   r.v_commanded, r.v_actual, r.p_static, r.p_dynamic, r.p_total);
  }
  if (!log.ticks.empty()) {
    fmt::format_to(it, "# mean_abs_dv_safe={}\n", log.MeanAbsSafeSpeedChange());
    fmt::format_to(it, "# termination={}\n", TerminationName(log.termination));
    fmt::format_to(it, "# ground_truth_collision={}\n", log.ground_truth_collision() ? 1 : 0);
    if (log.collision_time) fmt::format_to(it, "# collision_time={}\n", *log.collision_time);
  }
  return out;
}

std::string RenderHeatmapCsv(const RunLog& log) {
  std::string out;
  auto it = std::back_inserter(out);
  for (std::size_t i = 0; i < log.speed_levels.size(); ++i) {
    fmt::format_to(it, "{}v{}", i == 0 ? "" : ",", log.speed_levels[i]);
  }
  out += '\n';
  for (const TickRecord& r : log.ticks) {
    if (r.heatmap.empty()) continue;
    for (std::size_t i = 0; i < r.heatmap.size(); ++i) {
      fmt::format_to(it, "{}{}", i == 0 ? "" : ",", r.heatmap[i]);
    }
    out += '\n';
  }
  return out;
}

std::string RenderPathSpeedCsv(const RunLog& log) {
  std::string out = "x,y,speed\n";
  auto it = std::back_inserter(out);
  for (const TickRecord& r : log.ticks) {
    fmt::format_to(it, "{},{},{}\n", r.true_pose.x, r.true_pose.y, r.v_actual);
  }
  return out;
}

void WriteOutputs(const RunLog& log, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw OutputError("cannot create " + out_dir.string() + ": " + ec.message());
  WriteFile(out_dir / "run.csv", RenderRunCsv(log));
  WriteFile(out_dir / "heatmap.csv", RenderHeatmapCsv(log));
  WriteFile(out_dir / "path_speed.csv", RenderPathSpeedCsv(log));
}

}  // namespace safespeed
