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

#include "safespeed/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace safespeed {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

// `p` is collinear with [a, b]; checks it lies within the segment's box.
bool OnSegmentBox(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool AllFinite(const std::vector<Vec2>& pts) {
  return std::all_of(pts.begin(), pts.end(), [](const Vec2& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
  });
}

double PointSegmentDistanceSq(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len_sq = dx * dx + dy * dy;
  double t = 0.0;
  if (len_sq > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq, 0.0, 1.0);
  }
  const double ex = a.x + t * dx - p.x;
  const double ey = a.y + t * dy - p.y;
  return ex * ex + ey * ey;
}

}  // namespace

double NormalizeAngle(double angle) {
  double a = std::remainder(angle, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

Pose Compose(const Pose& a, const Pose& b) {
  const double c = std::cos(a.yaw);
  const double s = std::sin(a.yaw);
  return Pose(a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, a.yaw + b.yaw);
}

Pose Relative(const Pose& a, const Pose& b) {
  const double c = std::cos(a.yaw);
  const double s = std::sin(a.yaw);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return Pose(c * dx + s * dy, -s * dx + c * dy, b.yaw - a.yaw);
}

Vec2 TransformPoint(const Pose& pose, const Vec2& p) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {pose.x + c * p.x - s * p.y, pose.y + s * p.x + c * p.y};
}

Vec2 InverseTransformPoint(const Pose& pose, const Vec2& p) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  const double dx = p.x - pose.x;
  const double dy = p.y - pose.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Footprint::Footprint(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("footprint needs at least 3 vertices");
  if (!AllFinite(vertices_)) {
    throw std::invalid_argument("footprint has non-finite coordinates");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double turn = Cross(vertices_[i], vertices_[(i + 1) % n],
                              vertices_[(i + 2) % n]);
    if (turn <= 0.0) {
      throw std::invalid_argument(
          "footprint must be a strictly convex counter-clockwise polygon");
    }
  }
  if (!PointInPolygon({0.0, 0.0}, vertices_)) {
    throw std::invalid_argument("footprint must contain the body origin");
  }
}

Footprint Footprint::Rectangle(double length, double width, double rear) {
  const double front = length - rear;
  const double half = 0.5 * width;
  return Footprint({{-rear, -half}, {front, -half}, {front, half}, {-rear, half}});
}

double Footprint::MinExtent() const {
  auto [min_x, max_x] = std::minmax_element(
      vertices_.begin(), vertices_.end(),
      [](const Vec2& a, const Vec2& b) { return a.x < b.x; });
  auto [min_y, max_y] = std::minmax_element(
      vertices_.begin(), vertices_.end(),
      [](const Vec2& a, const Vec2& b) { return a.y < b.y; });
  return std::min(max_x->x - min_x->x, max_y->y - min_y->y);
}

Polygon FootprintAt(const Pose& pose, const Footprint& fp) {
  Polygon out;
  out.reserve(fp.vertices().size());
  for (const Vec2& v : fp.vertices()) out.push_back(TransformPoint(pose, v));
  return out;
}

DynamicObstacle::DynamicObstacle(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw std::invalid_argument("obstacle polyline needs at least 2 vertices");
  }
  if (!AllFinite(vertices_)) {
    throw std::invalid_argument("obstacle polyline has non-finite coordinates");
  }
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Pose origin, std::vector<std::uint8_t> cells)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("grid cell count " +
                                std::to_string(cells_.size()) +
                                " does not match width * height");
  }
  BuildIntegralImage();
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Pose origin)
    : OccupancyGrid(width, height, resolution, origin,
                    std::vector<std::uint8_t>(
                        static_cast<std::size_t>(std::max(width, 0)) *
                        std::max(height, 0))) {}

void OccupancyGrid::BuildIntegralImage() {
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  integral_.assign(stride * (height_ + 1), 0);
  for (int r = 0; r < height_; ++r) {
    std::int64_t row_sum = 0;
    for (int c = 0; c < width_; ++c) {
      row_sum += occupied(c, r) ? 1 : 0;
      integral_[(r + 1) * stride + c + 1] = integral_[r * stride + c + 1] + row_sum;
    }
  }
}

std::int64_t OccupancyGrid::CountOccupied(int c0, int r0, int c1,
                                          int r1) const {
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  return integral_[(r1 + 1) * stride + c1 + 1] - integral_[r0 * stride + c1 + 1] -
         integral_[(r1 + 1) * stride + c0] + integral_[r0 * stride + c0];
}

Vec2 OccupancyGrid::ToGridUnits(const Vec2& map_point) const {
  const Vec2 local = InverseTransformPoint(origin_, map_point);
  return {local.x / resolution_, local.y / resolution_};
}

OccupancyGrid OccupancyGrid::WithOccupied(int col, int row) const {
  std::vector<std::uint8_t> cells = cells_;
  cells.at(static_cast<std::size_t>(row) * width_ + col) = 1;
  return OccupancyGrid(width_, height_, resolution_, origin_, std::move(cells));
}

bool SegmentsIntersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                       const Vec2& b1) {
  const int d1 = Sign(Cross(b0, b1, a0));
  const int d2 = Sign(Cross(b0, b1, a1));
  const int d3 = Sign(Cross(a0, a1, b0));
  const int d4 = Sign(Cross(a0, a1, b1));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && OnSegmentBox(b0, b1, a0)) return true;
  if (d2 == 0 && OnSegmentBox(b0, b1, a1)) return true;
  if (d3 == 0 && OnSegmentBox(a0, a1, b0)) return true;
  if (d4 == 0 && OnSegmentBox(a0, a1, b1)) return true;
  return false;
}

bool PointInPolygon(const Vec2& p, std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    if (Cross(a, b, p) == 0.0 && OnSegmentBox(a, b, p)) return true;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool PolygonIntersectsBox(std::span<const Vec2> poly, const Vec2& lo,
                          const Vec2& hi) {
  const Vec2 corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  for (const Vec2& v : poly) {
    if (lo.x <= v.x && v.x <= hi.x && lo.y <= v.y && v.y <= hi.y) return true;
  }
  for (const Vec2& c : corners) {
    if (PointInPolygon(c, poly)) return true;
  }
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    for (int k = 0; k < 4; ++k) {
      if (SegmentsIntersect(a, b, corners[k], corners[(k + 1) % 4])) return true;
    }
  }
  return false;
}

bool PolygonHitsGrid(std::span<const Vec2> poly, const OccupancyGrid& grid) {
  const double w = grid.width();
  const double h = grid.height();
  std::vector<Vec2> cells_poly;
  cells_poly.reserve(poly.size());
  double min_x = w, min_y = h, max_x = 0.0, max_y = 0.0;
  for (const Vec2& v : poly) {
    const Vec2 g = grid.ToGridUnits(v);
    if (!(g.x >= 0.0 && g.x <= w && g.y >= 0.0 && g.y <= h)) return true;
    min_x = std::min(min_x, g.x);
    max_x = std::max(max_x, g.x);
    min_y = std::min(min_y, g.y);
    max_y = std::max(max_y, g.y);
    cells_poly.push_back(g);
  }
  // Cell i spans [i, i + 1]; it touches [min, max] iff ceil(min) - 1 <= i <= floor(max).
  const int c0 = std::max(0, static_cast<int>(std::ceil(min_x)) - 1);
  const int c1 = std::min(grid.width() - 1, static_cast<int>(std::floor(max_x)));
  const int r0 = std::max(0, static_cast<int>(std::ceil(min_y)) - 1);
  const int r1 = std::min(grid.height() - 1, static_cast<int>(std::floor(max_y)));
  if (grid.CountOccupied(c0, r0, c1, r1) == 0) return false;
  for (int r = r0; r <= r1; ++r) {
    if (grid.CountOccupied(c0, r, c1, r) == 0) continue;
    for (int c = c0; c <= c1; ++c) {
      if (!grid.occupied(c, r)) continue;
      if (PolygonIntersectsBox(cells_poly, {static_cast<double>(c), static_cast<double>(r)},
                               {static_cast<double>(c + 1), static_cast<double>(r + 1)})) {
        return true;
      }
    }
  }
  return false;
}

bool PolygonHitsPolyline(std::span<const Vec2> poly,
                         const DynamicObstacle& obstacle) {
  Vec2 center;
  for (const Vec2& v : poly) {
    center.x += v.x;
    center.y += v.y;
  }
  center.x /= static_cast<double>(poly.size());
  center.y /= static_cast<double>(poly.size());
  double radius_sq = 0.0;
  for (const Vec2& v : poly) {
    const double dx = v.x - center.x;
    const double dy = v.y - center.y;
    radius_sq = std::max(radius_sq, dx * dx + dy * dy);
  }

  // Slack keeps grazing contacts out of the cheap reject.
  radius_sq = radius_sq * (1.0 + 1e-9) + 1e-12;
  const auto& pts = obstacle.vertices();
  bool near = false;
  for (std::size_t i = 0; i + 1 < pts.size() && !near; ++i) {
    near = PointSegmentDistanceSq(center, pts[i], pts[i + 1]) <= radius_sq;
  }
  if (!near) return false;

  const std::size_t n = poly.size();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (SegmentsIntersect(pts[i], pts[i + 1], poly[k], poly[(k + 1) % n])) {
        return true;
      }
    }
  }
  return std::any_of(pts.begin(), pts.end(),
                     [&](const Vec2& p) { return PointInPolygon(p, poly); });
}

}  // namespace safespeed
