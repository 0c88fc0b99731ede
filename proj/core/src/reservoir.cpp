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

#include "zonerec/reservoir.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace zonerec {

std::vector<Reservoir> bottom_reservoirs(const BinaryImage& bin) {
  const int w = bin.width, h = bin.height;
  if (w == 0 || h == 0) return {};

  // Drained = background pixels with a non-rising escape to the bottom
  // edge; computed by the reverse BFS (seeds at the bottom row and side
  // columns, moves up/left/right through background).
  std::vector<std::uint8_t> drained(static_cast<size_t>(w) * h, 0);
  std::deque<Coord> queue;
  auto idx = [w](int r, int c) { return static_cast<size_t>(r) * w + c; };
  auto seed = [&](int r, int c) {
    if (!bin.get(r, c) && !drained[idx(r, c)]) {
      drained[idx(r, c)] = 1;
      queue.push_back({r, c});
    }
  };
  for (int c = 0; c < w; ++c) seed(h - 1, c);
  for (int r = 0; r < h; ++r) {
    seed(r, 0);
    if (w > 1) seed(r, w - 1);
  }
  constexpr std::pair<int, int> kMoves[3] = {{-1, 0}, {0, -1}, {0, 1}};
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    for (auto [dr, dc] : kMoves) {
      const int nr = p.row + dr, nc = p.col + dc;
      if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
      if (bin.get(nr, nc) || drained[idx(nr, nc)]) continue;
      drained[idx(nr, nc)] = 1;
      queue.push_back({nr, nc});
    }
  }

  BinaryImage water(w, h, false);
  bool any = false;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!bin.get(r, c) && !drained[idx(r, c)]) {
        water.set(r, c, true);
        any = true;
      }
    }
  }
  if (!any) return {};

  std::vector<Reservoir> out;
  for (const Component& comp : connected_components(water, 8)) {
    Reservoir res;
    res.pixels = comp.pixels;
    res.height = comp.bbox.height();
    res.depth_points = depth_points(res);
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<Reservoir> filter_reservoirs(const std::vector<Reservoir>& rs,
                                         StrokeWidth s_w) {
  std::vector<Reservoir> out;
  for (const Reservoir& r : rs)
    if (r.height >= 3 * s_w.value) out.push_back(r);
  return out;
}

std::vector<Coord> depth_points(const Reservoir& r) {
  if (r.pixels.empty()) return {};
  std::map<int, int> floor;  // column -> deepest (max) row
  for (Coord p : r.pixels) {
    auto [it, inserted] = floor.try_emplace(p.col, p.row);
    if (!inserted && p.row > it->second) it->second = p.row;
  }

  // Split the column set into contiguous intervals, then find local maxima
  // of the floor depth inside each; a missing neighbor counts as shallower.
  std::vector<Coord> out;
  std::vector<std::pair<int, int>> run;  // (col, floor row) contiguous
  auto flush = [&]() {
    const int n = static_cast<int>(run.size());
    int i = 0;
    while (i < n) {
      int j = i;
      while (j + 1 < n && run[j + 1].second == run[i].second) ++j;
      const bool deeper_left = i > 0 && run[i - 1].second > run[i].second;
      const bool deeper_right = j + 1 < n && run[j + 1].second > run[i].second;
      if (!deeper_left && !deeper_right) {
        const int col = (run[i].first + run[j].first) / 2;
        out.push_back({run[i].second, col});
      }
      i = j + 1;
    }
    run.clear();
  };
  for (auto [col, row] : floor) {
    if (!run.empty() && col != run.back().first + 1) flush();
    run.emplace_back(col, row);
  }
  flush();
  return out;
}

FitLine fit_depth_line(const std::vector<Coord>& points) {
  if (points.size() < 2)
    throw InputError("fit_depth_line: need at least 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(points.size());
  bool distinct = false;
  for (Coord p : points) {
    if (p.col != points.front().col) distinct = true;
    sx += p.col;
    sy += p.row;
    sxx += static_cast<double>(p.col) * p.col;
    sxy += static_cast<double>(p.col) * p.row;
  }
  if (!distinct)
    throw InputError("fit_depth_line: need at least 2 distinct columns");
  const double denom = n * sxx - sx * sx;
  FitLine line;
  line.slope = (n * sxy - sx * sy) / denom;
  line.intercept = (sy - line.slope * sx) / n;
  return line;
}

}  // namespace zonerec
