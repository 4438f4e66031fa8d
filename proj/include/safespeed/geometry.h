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

#ifndef SAFESPEED_GEOMETRY_H_
#define SAFESPEED_GEOMETRY_H_

#include <cstdint>
#include <span>
#include <vector>

namespace safespeed {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double angle);

// Planar pose. `yaw` is kept in (-pi, pi] by every operation in this header.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Pose() = default;
  Pose(double x_in, double y_in, double yaw_in)
      : x(x_in), y(y_in), yaw(NormalizeAngle(yaw_in)) {}

  Vec2 position() const { return {x, y}; }

  friend bool operator==(const Pose&, const Pose&) = default;
};

// a ⊕ b: `b` expressed in the frame of `a`, mapped into the frame `a` lives in.
Pose Compose(const Pose& a, const Pose& b);

// Inverse of Compose: `b` expressed in the frame of `a`, so that
// Compose(a, Relative(a, b)) == b.
Pose Relative(const Pose& a, const Pose& b);

// Applies `pose` as a rigid motion to a point.
Vec2 TransformPoint(const Pose& pose, const Vec2& p);

// Expresses a point given in the outer frame in the frame of `pose`.
Vec2 InverseTransformPoint(const Pose& pose, const Vec2& p);

using Polygon = std::vector<Vec2>;

// Vehicle outline in the body frame, counter-clockwise. Construction
// validates at least three vertices, finite coordinates, convexity, and that
// the body origin lies inside (or on) the outline.
class Footprint {
 public:
  explicit Footprint(std::vector<Vec2> vertices);

  // Axis-aligned rectangle spanning [-rear, length - rear] x [-width/2, width/2].
  static Footprint Rectangle(double length, double width, double rear);

  const std::vector<Vec2>& vertices() const { return vertices_; }

  // Smallest extent of the outline along either body axis.
  double MinExtent() const;

 private:
  std::vector<Vec2> vertices_;
};

// Footprint vertices placed at `pose`.
Polygon FootprintAt(const Pose& pose, const Footprint& fp);

// Obstacle outline as an open polyline.
class DynamicObstacle {
 public:
  explicit DynamicObstacle(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }

 private:
  std::vector<Vec2> vertices_;
};

// Binary occupancy map. Cell (col, row) covers the square
// [col, col + 1] x [row, row + 1] in grid units, scaled by `resolution` and
// placed in the map frame by `origin`.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, Pose origin,
                std::vector<std::uint8_t> cells);

  // All-free grid.
  OccupancyGrid(int width, int height, double resolution, Pose origin);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Pose& origin() const { return origin_; }

  bool occupied(int col, int row) const {
    return cells_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  // Number of occupied cells in the inclusive block [c0, c1] x [r0, r1];
  // the block must lie inside the grid.
  std::int64_t CountOccupied(int c0, int r0, int c1, int r1) const;

  // Map-frame point expressed in continuous grid units.
  Vec2 ToGridUnits(const Vec2& map_point) const;

  // Returns a copy with (col, row) marked occupied.
  OccupancyGrid WithOccupied(int col, int row) const;

 private:
  void BuildIntegralImage();

  int width_;
  int height_;
  double resolution_;
  Pose origin_;
  std::vector<std::uint8_t> cells_;
  // (width + 1) x (height + 1) summed-area table of occupancy.
  std::vector<std::int64_t> integral_;
};

// Closed-set intersection tests.
bool SegmentsIntersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                       const Vec2& b1);

// Point inside or on the boundary of a simple polygon.
bool PointInPolygon(const Vec2& p, std::span<const Vec2> poly);

// True if the closed polygon and the closed axis-aligned box intersect.
bool PolygonIntersectsBox(std::span<const Vec2> poly, const Vec2& lo,
                          const Vec2& hi);

// True iff the polygon touches an occupied cell or leaves the grid. Space
// outside the grid counts as occupied.
bool PolygonHitsGrid(std::span<const Vec2> poly, const OccupancyGrid& grid);

// True iff any obstacle segment touches the polygon or any obstacle vertex
// lies inside it.
bool PolygonHitsPolyline(std::span<const Vec2> poly,
                         const DynamicObstacle& obstacle);

}  // namespace safespeed

#endif  // SAFESPEED_GEOMETRY_H_
