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

#ifndef SAFESPEED_PGM_H_
#define SAFESPEED_PGM_H_

#include <optional>
#include <stdexcept>
#include <string>

#include "safespeed/geometry.h"

namespace safespeed {

class PgmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a P2 (ASCII) or P5 (binary, 8 or 16 bit) image as an occupancy grid.
// A pixel is occupied iff its value is below `occupied_below`, which defaults
// to maxval / 2. Image row 0 becomes the top grid row (highest y).
OccupancyGrid ParsePgm(const std::string& data, double resolution,
                       const Pose& origin,
                       std::optional<double> occupied_below = std::nullopt);

OccupancyGrid LoadPgm(const std::string& path, double resolution,
                      const Pose& origin,
                      std::optional<double> occupied_below = std::nullopt);

// Writes the grid as an 8-bit P5 image: occupied = 0, free = 255.
void SavePgm(const std::string& path, const OccupancyGrid& grid);

}  // namespace safespeed

#endif  // SAFESPEED_PGM_H_
