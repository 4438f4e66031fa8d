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

// Brute-force reference implementations used only by tests. Nothing in here
// calls the library's geometry routines: transforms are done with explicit
// homogeneous matrices and polygon/cell overlap with separating axes.

#ifndef SAFESPEED_TESTS_TEST_ORACLES_H_
#define SAFESPEED_TESTS_TEST_ORACLES_H_

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "safespeed/collision_probability.h"
#include "safespeed/geometry.h"
#include "safespeed/trajectory_prediction.h"

namespace safespeed::oracle {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 PoseMatrix(double x, double y, double yaw) {
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {{{c, -s, x}, {s, c, y}, {0.0, 0.0, 1.0}}};
}

inline Mat3 Multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Inverse of a rigid 2D transform: [R^T, -R^T t].
inline Mat3 RigidInverse(const Mat3& m) {
  Mat3 out{};
  out[0][0] = m[0][0];
  out[0][1] = m[1][0];
  out[1][0] = m[0][1];
  out[1][1] = m[1][1];
  out[0][2] = -(m[0][0] * m[0][2] + m[1][0] * m[1][2]);
  out[1][2] = -(m[0][1] * m[0][2] + m[1][1] * m[1][2]);
  out[2][2] = 1.0;
  return out;
}

inline Vec2 Apply(const Mat3& m, const Vec2& p) {
  return {m[0][0] * p.x + m[0][1] * p.y + m[0][2], m[1][0] * p.x + m[1][1] * p.y + m[1][2]};
}

inline Mat3 PoseMatrix(const Pose& p) { return PoseMatrix(p.x, p.y, p.yaw); }

// Pose (x, y, yaw) read back from a rigid matrix.
inline Pose MatrixPose(const Mat3& m) { return Pose(m[0][2], m[1][2], std::atan2(m[1][0], m[0][0])); }

// Transfer of a trajectory by matrices: T_to * T_from^-1 * T_p.
inline std::vector<Pose> TransferPoses(const std::vector<Pose>& poses, const Pose& from,
                                       const Pose& to) {
  const Mat3 delta = Multiply(PoseMatrix(to), RigidInverse(PoseMatrix(from)));
  std::vector<Pose> out;
  for (const Pose& p : poses) out.push_back(MatrixPose(Multiply(delta, PoseMatrix(p))));
  return out;
}

inline std::vector<Vec2> PlaceFootprint(const Pose& pose, const Footprint& fp) {
  const Mat3 m = PoseMatrix(pose);
  std::vector<Vec2> out;
  for (const Vec2& v : fp.vertices()) out.push_back(Apply(m, v));
  return out;
}

// Closed convex polygons intersect iff no separating axis exists among the
// edge normals of both.
inline bool ConvexOverlapSat(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  auto separated_along_edges = [](const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2& e0 = p[i];
      const Vec2& e1 = p[(i + 1) % p.size()];
      const Vec2 axis{-(e1.y - e0.y), e1.x - e0.x};
      double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
      double qmin = pmin, qmax = -pmin;
      for (const Vec2& v : p) {
        const double d = axis.x * v.x + axis.y * v.y;
        pmin = std::min(pmin, d);
        pmax = std::max(pmax, d);
      }
      for (const Vec2& v : q) {
        const double d = axis.x * v.x + axis.y * v.y;
        qmin = std::min(qmin, d);
        qmax = std::max(qmax, d);
      }
      if (pmax < qmin || qmax < pmin) return true;
    }
    return false;
  };
  return !separated_along_edges(a, b) && !separated_along_edges(b, a);
}

// Checks every cell of the grid. The grid's own rectangle is rebuilt in the
// map frame and a convex polygon leaves it iff some vertex is outside.
inline bool ConvexHitsGridAllCells(const std::vector<Vec2>& poly, const OccupancyGrid& grid) {
  const Mat3 origin = PoseMatrix(grid.origin());
  const double res = grid.resolution();
  const Mat3 to_grid = RigidInverse(origin);
  const double w = grid.width() * res, h = grid.height() * res;
  for (const Vec2& v : poly) {
    const Vec2 g = Apply(to_grid, v);
    if (g.x < 0.0 || g.x > w || g.y < 0.0 || g.y > h) return true;
  }
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (!grid.occupied(c, r)) continue;
      const std::vector<Vec2> cell = {Apply(origin, {c * res, r * res}),
                                      Apply(origin, {(c + 1) * res, r * res}),
                                      Apply(origin, {(c + 1) * res, (r + 1) * res}),
                                      Apply(origin, {c * res, (r + 1) * res})};
      if (ConvexOverlapSat(poly, cell)) return true;
    }
  }
  return false;
}

struct OracleStatic {
  double probability = 0.0;
  std::vector<bool> collides;
  std::vector<std::optional<double>> times;
};

// Per-particle transfer, per-sample all-cells check, weighted sum.
inline OracleStatic StaticProbabilityNaive(const WeightedParticleSet& ps,
                                           const PredictedTrajectory& base,
                                           const OccupancyGrid& grid, const Footprint& fp) {
  std::vector<Pose> poses;
  for (const auto& s : base.samples) poses.push_back(s.pose);
  OracleStatic out;
  for (const Particle& particle : ps.particles()) {
    const std::vector<Pose> moved = TransferPoses(poses, ps.estimated_pose(), particle.pose);
    std::optional<double> hit;
    for (std::size_t k = 0; k < moved.size() && !hit; ++k) {
      if (ConvexHitsGridAllCells(PlaceFootprint(moved[k], fp), grid)) hit = base.samples[k].time;
    }
    out.collides.push_back(hit.has_value());
    out.times.push_back(hit);
    if (hit) out.probability += particle.weight;
  }
  return out;
}

// Random grid of small rectangular blobs; `density` is roughly the occupied
// fraction.
inline OccupancyGrid RandomGrid(std::mt19937_64& rng, int width, int height, double resolution,
                                const Pose& origin, double density) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
  const int blobs = static_cast<int>(density * width * height / 6.0);
  std::uniform_int_distribution<int> col(0, width - 1), row(0, height - 1), size(0, 2);
  for (int b = 0; b < blobs; ++b) {
    const int c0 = col(rng), r0 = row(rng), sw = size(rng), sh = size(rng);
    for (int r = r0; r <= std::min(height - 1, r0 + sh); ++r)
      for (int c = c0; c <= std::min(width - 1, c0 + sw); ++c) cells[r * width + c] = 1;
  }
  return OccupancyGrid(width, height, resolution, origin, std::move(cells));
}

// Random strictly convex footprint containing the origin: points on an
// ellipse at sorted random angles.
inline Footprint RandomConvexFootprint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 4 + static_cast<int>(u(rng) * 4);
  const double ax = 0.3 + 0.5 * u(rng), ay = 0.2 + 0.3 * u(rng);
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back((i + 0.2 + 0.6 * u(rng)) * 2.0 * M_PI / n);
  std::vector<Vec2> verts;
  for (double a : angles) verts.push_back({ax * std::cos(a), ay * std::sin(a)});
  return Footprint(std::move(verts));
}

}  // namespace safespeed::oracle

#endif  // SAFESPEED_TESTS_TEST_ORACLES_H_
