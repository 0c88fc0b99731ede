// Copyright 2026 The zonerec Authors.
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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "zonerec/reservoir.hpp"

using namespace zonerec;
using namespace zonerec::test;

namespace {

BinaryImage u_cup() {
  return mask_from({
      "#......#",
      "#......#",
      "#......#",
      "#......#",
      "#......#",
      "########",
  });
}

}  // namespace

TEST_CASE("a cup holds one reservoir filling its interior") {
  const auto rs = bottom_reservoirs(u_cup());
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].pixels.size() == 6u * 5u);
  CHECK(rs[0].height == 5);
  for (Coord p : rs[0].pixels) {
    CHECK(p.col >= 1);
    CHECK(p.col <= 6);
    CHECK(p.row <= 4);
  }
}

TEST_CASE("a W shape holds two reservoirs") {
  const BinaryImage w = mask_from({
      "#...#...#",
      "#...#...#",
      "#...#...#",
      "#########",
  });
  CHECK(bottom_reservoirs(w).size() == 2);
}

TEST_CASE("a flat bar holds nothing") {
  const BinaryImage bar = mask_from({
      ".........",
      "#########",
      ".........",
  });
  CHECK(bottom_reservoirs(bar).empty());
}

TEST_CASE("reservoir pixels are background and pairwise disjoint") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage m = random_mask(rng, 20, 14, 0.35);
    std::set<std::pair<int, int>> seen;
    for (const Reservoir& r : bottom_reservoirs(m)) {
      CHECK(r.height >= 1);
      CHECK_FALSE(r.depth_points.empty());
      for (Coord p : r.pixels) {
        CHECK_FALSE(m.get(p.row, p.col));
        CHECK(seen.emplace(p.row, p.col).second);
      }
    }
  }
}

TEST_CASE("deepening a cup wall never deletes its reservoir") {
  const BinaryImage shallow = mask_from({
      "........",
      "#......#",
      "#......#",
      "########",
  });
  const auto before = bottom_reservoirs(shallow);
  REQUIRE(before.size() == 1);

  BinaryImage deeper = shallow;
  deeper.set(0, 0, true);
  const auto after = bottom_reservoirs(deeper);
  REQUIRE(after.size() == 1);
  CHECK(after[0].pixels.size() >= before[0].pixels.size());
}

TEST_CASE("filter keeps exactly reservoirs of height >= 3 stroke widths") {
  std::vector<Reservoir> rs(3);
  rs[0].height = 2;
  rs[1].height = 7;
  rs[2].height = 10;
  const auto kept = filter_reservoirs(rs, StrokeWidth{3});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].height == 10);

  CHECK(filter_reservoirs({rs[0]}, StrokeWidth{3}).empty());

  Reservoir edge;
  edge.height = 9;  // exactly 3 * S_w
  CHECK(filter_reservoirs({edge}, StrokeWidth{3}).size() == 1);

  const auto twice = filter_reservoirs(kept, StrokeWidth{3});
  CHECK(twice.size() == kept.size());
}

TEST_CASE("depth points: V apex, plateau midpoint, floor-scan oracle") {
  const BinaryImage vee = mask_from({
      "#.....#",
      ".#...#.",
      "..#.#..",
      "...#...",
  });
  const auto rs = bottom_reservoirs(vee);
  REQUIRE(rs.size() == 1);
  REQUIRE(rs[0].depth_points.size() == 1);
  CHECK(rs[0].depth_points[0].col == 3);
  CHECK(rs[0].depth_points[0].row == 2);

  const BinaryImage cup = mask_from({
      "...#.....#...",
      "...#.....#...",
      "...#.....#...",
      "...#######...",
  });
  const auto rs2 = bottom_reservoirs(cup);
  REQUIRE(rs2.size() == 1);
  REQUIRE(rs2[0].depth_points.size() == 1);
  CHECK(rs2[0].depth_points[0] == Coord{2, 6});

  Rng rng(23);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryImage m = random_mask(rng, 22, 16, 0.3);
    for (const Reservoir& r : bottom_reservoirs(m)) {
      std::map<int, int> floor;
      for (Coord p : r.pixels) {
        auto [it, fresh] = floor.try_emplace(p.col, p.row);
        if (!fresh) it->second = std::max(it->second, p.row);
      }
      for (Coord d : r.depth_points) {
        CHECK(floor.count(d.col));
        CHECK(floor[d.col] == d.row);
        const auto left = floor.find(d.col - 1);
        const auto right = floor.find(d.col + 1);
        if (left != floor.end()) CHECK(left->second <= d.row);
        if (right != floor.end()) CHECK(right->second <= d.row);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("two-lobed cavity yields two depth points") {
  const BinaryImage lobes = mask_from({
      "#.......#",
      "#.......#",
      "#...#...#",
      "##.###.##",
      "#########",
  });
  const auto rs = bottom_reservoirs(lobes);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].depth_points.size() == 2);
}

TEST_CASE("fit_depth_line matches the closed-form normal equations") {
  const FitLine flat = fit_depth_line({{10, 0}, {10, 5}, {10, 9}});
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.intercept == doctest::Approx(10.0));

  const FitLine diag = fit_depth_line({{0, 0}, {10, 10}});
  CHECK(diag.slope == doctest::Approx(1.0));

  CHECK_THROWS_AS(fit_depth_line({{1, 4}}), InputError);
  CHECK_THROWS_AS(fit_depth_line({{1, 4}, {9, 4}, {3, 4}}), InputError);

  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Coord> pts;
    const double slope = rng.uniform(-1.0, 1.0);
    const double icept = rng.uniform(-10.0, 10.0);
    for (int i = 0; i < 12; ++i) {
      const int col = i * 3 + rng.uniform_int(0, 1);
      const int row = static_cast<int>(
          std::lround(slope * col + icept + rng.uniform(-2.0, 2.0)));
      pts.push_back({row, col});
    }
    const FitLine got = fit_depth_line(pts);
    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Coord p : pts) {
      sx += p.col;
      sy += p.row;
      sxx += double(p.col) * p.col;
      sxy += double(p.col) * p.row;
    }
    const double m = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double b = (sy - m * sx) / n;
    CHECK(std::abs(got.slope - m) < 1e-9);
    CHECK(std::abs(got.intercept - b) < 1e-9);
  }
}
