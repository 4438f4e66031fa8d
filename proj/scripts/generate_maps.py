#!/usr/bin/env python3
# Copyright 2026 The safespeed Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the occupancy maps used by the bundled scenarios.

Maps are 8-bit binary PGM at 0.1 m per pixel: 0 is occupied, 255 free.
Coordinates below are metres in the map frame (origin bottom-left).

    python3 scripts/generate_maps.py [out_dir]
"""

import math
import pathlib
import sys

RES = 0.1
WALL = 0.3


class Canvas:
    def __init__(self, width_m, height_m):
        self.w = round(width_m / RES)
        self.h = round(height_m / RES)
        self.cells = [[False] * self.w for _ in range(self.h)]  # [row][col], row 0 at y = 0

    def fill(self, x0, y0, x1, y1):
        c0, c1 = max(0, math.floor(x0 / RES + 1e-9)), min(self.w, math.ceil(x1 / RES - 1e-9))
        r0, r1 = max(0, math.floor(y0 / RES + 1e-9)), min(self.h, math.ceil(y1 / RES - 1e-9))
        for r in range(r0, r1):
            for c in range(c0, c1):
                self.cells[r][c] = True

    def fill_where(self, pred):
        for r in range(self.h):
            for c in range(self.w):
                if pred((c + 0.5) * RES, (r + 0.5) * RES):
                    self.cells[r][c] = True

    def border(self):
        w, h = self.w * RES, self.h * RES
        self.fill(0, 0, w, WALL)
        self.fill(0, h - WALL, w, h)
        self.fill(0, 0, WALL, h)
        self.fill(w - WALL, 0, w, h)

    def save(self, path):
        data = bytearray()
        for r in reversed(range(self.h)):
            data.extend(0 if v else 255 for v in self.cells[r])
        with open(path, "wb") as f:
            f.write(b"P5\n%d %d\n255\n" % (self.w, self.h))
            f.write(bytes(data))


def corridor():
    m = Canvas(44, 6)
    m.border()
    return m


def wall():
    m = Canvas(30, 6)
    m.border()
    m.fill(20.0, 0, 20.5, 6)
    return m


def narrow_gap():
    # Opening of 1.3 m: vehicle width 0.5 m plus 4 sigma at sigma = 0.2 m.
    m = Canvas(50, 8)
    m.border()
    m.fill(25.0, 0, 25.4, 4.0 - 0.65)
    m.fill(25.0, 4.0 + 0.65, 25.4, 8)
    return m


def u_turn():
    # Lanes at y = 2.0 and y = 4.2 around a thin divider; the turn has a 1.1 m
    # radius, close to the 0.88 m minimum of the default vehicle.
    m = Canvas(19.2, 5.6)
    m.border()
    m.fill(0, 3.0, 17.0, 3.2)
    return m


def circle():
    cx, cy = 8.0, 8.0
    m = Canvas(16, 16)
    m.border()
    m.fill_where(lambda x, y: not 3.5 <= math.hypot(x - cx, y - cy) <= 6.5)
    return m


def resample_jump():
    # Long 1.4 m wide corridor: with heading uncertainty the predicted spread
    # grows with travelled distance, so the collision probability rises
    # gradually with speed instead of in a single step.
    m = Canvas(104, 6)
    m.border()
    m.fill(0, 0, 104, 2.3)
    m.fill(0, 3.7, 104, 6)
    return m


MAPS = {
    "corridor": corridor,
    "wall": wall,
    "narrow_gap": narrow_gap,
    "u_turn": u_turn,
    "circle": circle,
    "resample_jump": resample_jump,
}


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else (
        pathlib.Path(__file__).resolve().parent.parent / "scenarios" / "maps")
    out.mkdir(parents=True, exist_ok=True)
    for name, build in MAPS.items():
        build().save(out / f"{name}.pgm")


if __name__ == "__main__":
    main()
