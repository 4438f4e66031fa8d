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

#include "safespeed/pgm.h"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

namespace safespeed {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& data) : data_(data) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string Token() {
    while (pos_ < data_.size()) {
      const unsigned char c = data_[pos_];
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw PgmError("unexpected end of PGM data");
    return data_.substr(start, pos_ - start);
  }

  long Number(const char* what) {
    const std::string tok = Token();
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0) {
      throw PgmError(std::string("bad PGM ") + what + ": '" + tok + "'");
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void Skip(std::size_t n) { pos_ += n; }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
};

}  // namespace

OccupancyGrid ParsePgm(const std::string& data, double resolution,
                       const Pose& origin,
                       std::optional<double> occupied_below) {
  HeaderReader reader(data);
  const std::string magic = reader.Token();
  if (magic != "P2" && magic != "P5") {
    throw PgmError("unsupported PGM magic '" + magic + "'");
  }
  const long width = reader.Number("width");
  const long height = reader.Number("height");
  const long maxval = reader.Number("maxval");
  if (width <= 0 || height <= 0) throw PgmError("PGM dimensions must be positive");
  if (maxval <= 0 || maxval > 65535) throw PgmError("PGM maxval out of range");
  const double cutoff = occupied_below.value_or(static_cast<double>(maxval) / 2.0);

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<long> pixels;
  pixels.reserve(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = reader.Number("pixel");
      if (v > maxval) throw PgmError("PGM pixel exceeds maxval");
      pixels.push_back(v);
    }
  } else {
    reader.Skip(1);  // single whitespace after maxval
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    if (data.size() < reader.pos() + count * bytes) {
      throw PgmError("truncated PGM raster");
    }
    const auto* raw = reinterpret_cast<const unsigned char*>(data.data() + reader.pos());
    for (std::size_t i = 0; i < count; ++i) {
      const long v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
      if (v > maxval) throw PgmError("PGM pixel exceeds maxval");
      pixels.push_back(v);
    }
  }

  std::vector<std::uint8_t> cells(count);
  for (long r = 0; r < height; ++r) {
    const long grid_row = height - 1 - r;
    for (long c = 0; c < width; ++c) {
      cells[grid_row * width + c] = pixels[r * width + c] < cutoff ? 1 : 0;
    }
  }
  return OccupancyGrid(static_cast<int>(width), static_cast<int>(height),
                       resolution, origin, std::move(cells));
}

OccupancyGrid LoadPgm(const std::string& path, double resolution,
                      const Pose& origin,
                      std::optional<double> occupied_below) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open PGM file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParsePgm(buf.str(), resolution, origin, occupied_below);
  } catch (const PgmError& e) {
    throw PgmError(path + ": " + e.what());
  }
}

void SavePgm(const std::string& path, const OccupancyGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError("cannot write PGM file '" + path + "'");
  out << "P5\n" << grid.width() << " " << grid.height() << "\n255\n";
  for (int r = grid.height() - 1; r >= 0; --r) {
    for (int c = 0; c < grid.width(); ++c) {
      out.put(grid.occupied(c, r) ? static_cast<char>(0) : static_cast<char>(255));
    }
  }
  if (!out) throw PgmError("failed writing PGM file '" + path + "'");
}

}  // namespace safespeed
