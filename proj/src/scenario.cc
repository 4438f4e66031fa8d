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

#include "safespeed/scenario.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#include "safespeed/pgm.h"
#include "safespeed/trajectory_prediction.h"

namespace safespeed {
namespace {

using Kind = ScenarioError::Kind;

std::string Join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

[[noreturn]] void Malformed(const std::string& field, const std::string& message) {
  throw ScenarioError(Kind::kMalformedField, field, message);
}

void RejectUnknownKeys(const YAML::Node& node, const std::string& prefix,
                       std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) Malformed(prefix.empty() ? "<root>" : prefix, "expected a mapping");
  const std::set<std::string_view> keys(allowed);
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!keys.contains(key)) Malformed(Join(prefix, key), "unknown key");
  }
}

template <typename T>
T As(const YAML::Node& node, const std::string& field) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Malformed(field, "cannot parse value");
  }
}

template <typename T>
void Read(const YAML::Node& parent, const std::string& prefix, const char* key, T& out) {
  if (const YAML::Node n = parent[key]) out = As<T>(n, Join(prefix, key));
}

template <typename T>
T Require(const YAML::Node& parent, const std::string& prefix, const char* key) {
  const YAML::Node n = parent[key];
  if (!n) Malformed(Join(prefix, key), "required field is missing");
  return As<T>(n, Join(prefix, key));
}

std::vector<double> Numbers(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) Malformed(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(As<double>(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<Vec2> Points(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsSequence()) Malformed(field, "expected a list of [x, y] points");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const std::vector<double> v = Numbers(node[i], f);
    if (v.size() != 2) Malformed(f, "expected [x, y]");
    out.push_back({v[0], v[1]});
  }
  return out;
}

void RequirePositive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) Malformed(field, "must be positive and finite");
}

void RequireNonNegative(double v, const std::string& field) {
  if (!(v >= 0.0) || !std::isfinite(v)) Malformed(field, "must be non-negative and finite");
}

VehicleParams ParseVehicle(const YAML::Node& node) {
  VehicleParams p;
  if (!node) return p;
  RejectUnknownKeys(node, "vehicle",
                    {"wheelbase", "max_steer", "max_steer_rate", "max_accel", "max_decel",
                     "length", "width", "rear_overhang", "v_max_capability"});
  Read(node, "vehicle", "wheelbase", p.wheelbase);
  Read(node, "vehicle", "max_steer", p.max_steer);
  Read(node, "vehicle", "max_steer_rate", p.max_steer_rate);
  Read(node, "vehicle", "max_accel", p.max_accel);
  Read(node, "vehicle", "max_decel", p.max_decel);
  Read(node, "vehicle", "length", p.length);
  Read(node, "vehicle", "width", p.width);
  Read(node, "vehicle", "rear_overhang", p.rear_overhang);
  Read(node, "vehicle", "v_max_capability", p.v_max_capability);
  try {
    p.Validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    Malformed(msg.substr(0, msg.find(' ')), msg);
  }
  return p;
}

ControllerGains ParseGains(const YAML::Node& node) {
  ControllerGains g;
  if (!node) return g;
  RejectUnknownKeys(node, "controller",
                    {"lookahead_gain", "lookahead_min", "lookahead_max", "speed_gain",
                     "search_window"});
  Read(node, "controller", "lookahead_gain", g.lookahead_gain);
  Read(node, "controller", "lookahead_min", g.lookahead_min);
  Read(node, "controller", "lookahead_max", g.lookahead_max);
  Read(node, "controller", "speed_gain", g.speed_gain);
  Read(node, "controller", "search_window", g.search_window);
  try {
    g.Validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    Malformed(msg.substr(0, msg.find(' ')), msg);
  }
  return g;
}

ThresholdFunction ParseThreshold(const YAML::Node& node) {
  if (!node) return ThresholdFunction::Make(ThresholdKind::kConstant, 0.2);
  RejectUnknownKeys(node, "threshold", {"kind", "p0", "k", "p_floor"});
  ThresholdKind kind = ThresholdKind::kConstant;
  if (const YAML::Node n = node["kind"]) {
    try {
      kind = ParseThresholdKind(As<std::string>(n, "threshold.kind"));
    } catch (const std::invalid_argument& e) {
      Malformed("threshold.kind", e.what());
    }
  }
  double p0 = 0.2;
  double floor = 0.0;
  std::optional<double> k;
  Read(node, "threshold", "p0", p0);
  Read(node, "threshold", "p_floor", floor);
  if (const YAML::Node n = node["k"]) k = As<double>(n, "threshold.k");
  try {
    return ThresholdFunction::Make(kind, p0, k, floor);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    Malformed(msg.substr(0, msg.find(' ')), msg);
  }
}

LocalizationConfig ParseLocalization(const YAML::Node& node) {
  LocalizationConfig c;
  if (!node) return c;
  const std::string p = "localization";
  RejectUnknownKeys(node, p,
                    {"sigma_x", "sigma_y", "sigma_yaw", "particles", "jump_period",
                     "jump_magnitude", "jump_yaw", "jump_decay"});
  Read(node, p, "sigma_x", c.sigma_x);
  Read(node, p, "sigma_y", c.sigma_y);
  Read(node, p, "sigma_yaw", c.sigma_yaw);
  Read(node, p, "particles", c.particles);
  Read(node, p, "jump_period", c.jump_period);
  Read(node, p, "jump_magnitude", c.jump_magnitude);
  Read(node, p, "jump_yaw", c.jump_yaw);
  Read(node, p, "jump_decay", c.jump_decay);
  RequireNonNegative(c.sigma_x, p + ".sigma_x");
  RequireNonNegative(c.sigma_y, p + ".sigma_y");
  RequireNonNegative(c.sigma_yaw, p + ".sigma_yaw");
  RequireNonNegative(c.jump_period, p + ".jump_period");
  RequireNonNegative(c.jump_magnitude, p + ".jump_magnitude");
  RequireNonNegative(c.jump_yaw, p + ".jump_yaw");
  RequirePositive(c.jump_decay, p + ".jump_decay");
  if (c.particles < 1) Malformed(p + ".particles", "must be at least 1");
  return c;
}

ReferenceTrajectory ParseRoute(const YAML::Node& node) {
  if (!node) Malformed("route", "required field is missing");
  RejectUnknownKeys(node, "route", {"waypoints"});
  const YAML::Node wps = node["waypoints"];
  if (!wps || !wps.IsSequence()) Malformed("route.waypoints", "expected a list of points");
  std::vector<Vec2> points;
  std::vector<std::optional<double>> hints;
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const std::string f = "route.waypoints[" + std::to_string(i) + "]";
    const std::vector<double> v = Numbers(wps[i], f);
    if (v.size() != 2 && v.size() != 3) Malformed(f, "expected [x, y] or [x, y, speed_hint]");
    points.push_back({v[0], v[1]});
    hints.push_back(v.size() == 3 ? std::optional<double>(v[2]) : std::nullopt);
  }
  try {
    return ReferenceTrajectory(std::move(points), std::move(hints));
  } catch (const std::invalid_argument& e) {
    Malformed("route.waypoints", e.what());
  }
}

OccupancyGrid ParseMap(const YAML::Node& node, const std::filesystem::path& base_dir,
                       std::filesystem::path& image_path) {
  if (!node) Malformed("map", "required field is missing");
  RejectUnknownKeys(node, "map", {"image", "resolution", "origin", "occupied_below"});
  image_path = base_dir / Require<std::string>(node, "map", "image");
  const double resolution = Require<double>(node, "map", "resolution");
  RequirePositive(resolution, "map.resolution");
  Pose origin;
  if (const YAML::Node n = node["origin"]) {
    const std::vector<double> v = Numbers(n, "map.origin");
    if (v.size() != 3) Malformed("map.origin", "expected [x, y, yaw]");
    origin = Pose(v[0], v[1], v[2]);
  }
  std::optional<double> cutoff;
  if (const YAML::Node n = node["occupied_below"]) cutoff = As<double>(n, "map.occupied_below");

  if (!std::filesystem::exists(image_path)) {
    throw ScenarioError(Kind::kMissingFile, "map.image",
                        "file not found: " + image_path.string());
  }
  try {
    return LoadPgm(image_path.string(), resolution, origin, cutoff);
  } catch (const PgmError& e) {
    Malformed("map.image", e.what());
  }
}

}  // namespace

void ValidateScenario(const Scenario& s) {
  auto cross = [](const std::string& field, const std::string& msg) {
    throw ScenarioError(Kind::kCrossValidation, field, msg);
  };
  RequirePositive(s.horizon, "prediction.horizon");
  RequirePositive(s.dt, "prediction.dt");
  RequirePositive(s.control_period, "control_period");
  RequirePositive(s.duration, "duration");
  RequirePositive(s.v_max, "v_max");
  RequireNonNegative(s.goal_tolerance, "goal_tolerance");
  if (s.speed_levels < 2) Malformed("speed_levels", "must be at least 2");
  if (s.localization.particles < 1) Malformed("localization.particles", "must be at least 1");
  if (s.workers < 0) Malformed("workers", "must be non-negative");
  try {
    s.threshold.Validate();
  } catch (const std::invalid_argument& e) {
    Malformed("threshold", e.what());
  }

  if (s.dt > s.horizon) cross("prediction.dt", "step exceeds the prediction horizon");
  if (s.v_max > s.vehicle.v_max_capability) {
    cross("v_max", "exceeds vehicle.v_max_capability");
  }
  const double stopping_time = s.v_max / s.vehicle.max_decel;
  if (s.horizon < stopping_time) {
    std::ostringstream msg;
    msg << "horizon " << s.horizon << " s is shorter than the stopping time "
        << stopping_time << " s from v_max at max_decel";
    cross("prediction.horizon", msg.str());
  }
  const double sample_gap = s.v_max * s.dt;
  if (sample_gap >= s.footprint.MinExtent()) {
    std::ostringstream msg;
    msg << "rollout step " << sample_gap << " m at v_max is not shorter than the footprint extent "
        << s.footprint.MinExtent() << " m";
    cross("prediction.dt", msg.str());
  }
}

Scenario ParseScenario(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    Malformed("<root>", std::string("invalid YAML: ") + e.what());
  }
  RejectUnknownKeys(root, "",
                    {"name", "seed", "duration", "control_period", "v_max", "speed_levels",
                     "search", "heatmap", "workers", "goal_tolerance", "map", "route", "start",
                     "vehicle", "footprint", "controller", "prediction", "threshold",
                     "localization", "plant_noise", "obstacles"});

  std::filesystem::path image;
  OccupancyGrid grid = ParseMap(root["map"], base_dir, image);
  ReferenceTrajectory route = ParseRoute(root["route"]);
  const VehicleParams vehicle = ParseVehicle(root["vehicle"]);

  std::optional<Footprint> footprint;
  if (const YAML::Node n = root["footprint"]) {
    try {
      footprint.emplace(Points(n, "footprint"));
    } catch (const std::invalid_argument& e) {
      Malformed("footprint", e.what());
    }
  } else {
    footprint.emplace(vehicle.RectangleFootprint());
  }

  VehicleState start;
  {
    const Vec2 a = route.waypoints()[0];
    const Vec2 b = route.waypoints()[1];
    start.pose = Pose(a.x, a.y, std::atan2(b.y - a.y, b.x - a.x));
  }
  if (const YAML::Node n = root["start"]) {
    RejectUnknownKeys(n, "start", {"x", "y", "yaw", "speed"});
    double x = start.pose.x, y = start.pose.y, yaw = start.pose.yaw;
    Read(n, "start", "x", x);
    Read(n, "start", "y", y);
    Read(n, "start", "yaw", yaw);
    Read(n, "start", "speed", start.speed);
    start.pose = Pose(x, y, yaw);
    RequireNonNegative(start.speed, "start.speed");
  }

  Scenario s{.name = root["name"] ? As<std::string>(root["name"], "name") : "scenario",
             .map_image = image,
             .grid = std::move(grid),
             .route = std::move(route),
             .start = start,
             .vehicle = vehicle,
             .footprint = *footprint};
  s.gains = ParseGains(root["controller"]);
  s.threshold = ParseThreshold(root["threshold"]);
  s.localization = ParseLocalization(root["localization"]);

  if (const YAML::Node n = root["prediction"]) {
    RejectUnknownKeys(n, "prediction", {"horizon", "dt"});
    Read(n, "prediction", "horizon", s.horizon);
    Read(n, "prediction", "dt", s.dt);
  }
  if (const YAML::Node n = root["plant_noise"]) {
    RejectUnknownKeys(n, "plant_noise", {"accel", "steer"});
    Read(n, "plant_noise", "accel", s.plant_noise.accel);
    Read(n, "plant_noise", "steer", s.plant_noise.steer);
    RequireNonNegative(s.plant_noise.accel, "plant_noise.accel");
    RequireNonNegative(s.plant_noise.steer, "plant_noise.steer");
  }
  if (const YAML::Node n = root["obstacles"]) {
    if (!n.IsSequence()) Malformed("obstacles", "expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::string f = "obstacles[" + std::to_string(i) + "]";
      RejectUnknownKeys(n[i], f, {"vertices", "appear_at"});
      ObstacleSpec o;
      o.vertices = Points(n[i]["vertices"], f + ".vertices");
      Read(n[i], f, "appear_at", o.appear_at);
      try {
        DynamicObstacle check(o.vertices);
      } catch (const std::invalid_argument& e) {
        Malformed(f + ".vertices", e.what());
      }
      RequireNonNegative(o.appear_at, f + ".appear_at");
      s.obstacles.push_back(std::move(o));
    }
  }

  Read(root, "", "seed", s.seed);
  Read(root, "", "duration", s.duration);
  Read(root, "", "control_period", s.control_period);
  Read(root, "", "v_max", s.v_max);
  Read(root, "", "speed_levels", s.speed_levels);
  Read(root, "", "heatmap", s.heatmap);
  Read(root, "", "workers", s.workers);
  Read(root, "", "goal_tolerance", s.goal_tolerance);
  if (const YAML::Node n = root["search"]) {
    const std::string mode = As<std::string>(n, "search");
    if (mode == "binary") {
      s.search = SearchMode::kBinary;
    } else if (mode == "scan") {
      s.search = SearchMode::kScan;
    } else {
      Malformed("search", "expected binary or scan");
    }
  }

  ValidateScenario(s);
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError(Kind::kMissingFile, "scenario", "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str(), path.parent_path());
}

}  // namespace safespeed
