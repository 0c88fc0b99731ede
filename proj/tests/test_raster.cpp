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
#include <numeric>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "zonerec/raster.hpp"

using namespace zonerec;
using namespace zonerec::test;

namespace {

// Independent exhaustive Otsu oracle: tries every split and maximizes
// between-class variance directly from the pixel list.
int otsu_oracle_threshold(const RasterImage& img) {
  double best_var = 0.0;
  int best_t = -1;
  const double n = static_cast<double>(img.samples.size());
  for (int t = 0; t < 255; ++t) {
    double w0 = 0, s0 = 0, w1 = 0, s1 = 0;
    for (std::uint8_t v : img.samples) {
      if (v <= t) {
        w0 += 1;
        s0 += v;
      } else {
        w1 += 1;
        s1 += v;
      }
    }
    if (w0 == 0 || w1 == 0) continue;
    const double mu0 = s0 / w0, mu1 = s1 / w1;
    const double var = (w0 / n) * (w1 / n) * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t < 0 ? 0 : best_t + 1;
}

// Flood-fill component counter independent of the labeling code.
int flood_fill_count(const BinaryImage& bin, int connectivity) {
  std::vector<std::uint8_t> seen(bin.mask.size(), 0);
  int count = 0;
  for (int r = 0; r < bin.height; ++r) {
    for (int c = 0; c < bin.width; ++c) {
      if (!bin.get(r, c) || seen[static_cast<size_t>(r) * bin.width + c])
        continue;
      ++count;
      std::vector<Coord> stack{{r, c}};
      seen[static_cast<size_t>(r) * bin.width + c] = 1;
      while (!stack.empty()) {
        const Coord p = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (connectivity == 4 && dr != 0 && dc != 0) continue;
            const int nr = p.row + dr, nc = p.col + dc;
            if (!bin.in_bounds(nr, nc) || !bin.get(nr, nc)) continue;
            auto& s = seen[static_cast<size_t>(nr) * bin.width + nc];
            if (s) continue;
            s = 1;
            stack.push_back({nr, nc});
          }
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("otsu separates perfectly bimodal images") {
  RasterImage img(10, 10, 20);
  for (int i = 0; i < 50; ++i) img.samples[i] = 230;
  const OtsuResult res = otsu_binarize(img);
  CHECK_FALSE(res.degenerate);
  int fg = 0;
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c)
      if (res.image.get(r, c)) {
        ++fg;
        CHECK(img.at(r, c) == 20);
      }
  CHECK(fg == 50);
}

TEST_CASE("otsu flags constant images as degenerate") {
  RasterImage img(8, 8, 128);
  const OtsuResult res = otsu_binarize(img);
  CHECK(res.degenerate);
  CHECK(res.image.foreground_count() == 0);
}

TEST_CASE("otsu threshold equals exhaustive between-class variance argmax") {
  Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    RasterImage img(16, 16, 0);
    const int mu0 = rng.uniform_int(30, 90);
    const int mu1 = rng.uniform_int(150, 220);
    for (auto& v : img.samples) {
      const bool low = rng.bernoulli(0.5);
      const int raw =
          static_cast<int>(std::lround(rng.gauss(low ? mu0 : mu1, 12.0)));
      v = static_cast<std::uint8_t>(std::clamp(raw, 0, 255));
    }
    CHECK(otsu_binarize(img).threshold == otsu_oracle_threshold(img));
  }
}

TEST_CASE("otsu threshold depends only on the histogram") {
  Rng rng(99);
  RasterImage img = random_gray(rng, 12, 12);
  const int t0 = otsu_binarize(img).threshold;
  RasterImage perm = img;
  std::reverse(perm.samples.begin(), perm.samples.end());
  CHECK(otsu_binarize(perm).threshold == t0);
}

TEST_CASE("connected components: blocks, diagonals, partition") {
  BinaryImage two(8, 4, false);
  draw_rect(two, 0, 0, 1, 1);
  draw_rect(two, 2, 5, 3, 6);
  CHECK(connected_components(two, 8).size() == 2);

  const BinaryImage diag = mask_from({"#.", ".#"});
  CHECK(connected_components(diag, 8).size() == 1);
  CHECK(connected_components(diag, 4).size() == 2);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryImage m = random_mask(rng, 24, 18, 0.35);
    for (int conn : {4, 8}) {
      const auto comps = connected_components(m, conn);
      CHECK(static_cast<int>(comps.size()) == flood_fill_count(m, conn));
      std::set<std::pair<int, int>> seen;
      int total = 0;
      for (const auto& comp : comps) {
        CHECK_FALSE(comp.pixels.empty());
        for (Coord p : comp.pixels) {
          CHECK(comp.bbox.contains(p));
          CHECK(seen.emplace(p.row, p.col).second);
          ++total;
        }
      }
      CHECK(total == m.foreground_count());
    }
  }
}

TEST_CASE("rlsa fills gaps between ink, not edge runs") {
  const BinaryImage row = mask_from({"#..#"});
  CHECK(rlsa_horizontal(row, 2) == mask_from({"####"}));
  CHECK(rlsa_horizontal(row, 1) == row);

  const BinaryImage edge = mask_from({"..#..."});
  CHECK(rlsa_horizontal(edge, 5) == edge);

  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryImage m = random_mask(rng, 30, 6, 0.3);
    const int gap = rng.uniform_int(0, 5);
    const BinaryImage got = rlsa_horizontal(m, gap);
    for (int r = 0; r < m.height; ++r) {
      for (int c = 0; c < m.width; ++c) {
        bool expect = m.get(r, c);
        if (!expect) {
          int lo = c, hi = c;
          while (lo > 0 && !m.get(r, lo - 1)) --lo;
          while (hi + 1 < m.width && !m.get(r, hi + 1)) ++hi;
          const bool left_ink = lo > 0;
          const bool right_ink = hi + 1 < m.width;
          expect = left_ink && right_ink && (hi - lo + 1) <= gap;
        }
        CHECK(got.get(r, c) == expect);
      }
    }
  }
}

TEST_CASE("skeleton of a bar is a single path with two ends") {
  BinaryImage bar(11, 3, false);
  draw_rect(bar, 0, 0, 2, 10);
  const Skeleton s = skeletonize(bar);
  CHECK(s.mask.foreground_count() <= bar.foreground_count());
  int ends = 0, junctions = 0;
  for (const Keypoint& k : s.keypoints) {
    if (k.kind == KeypointKind::End) ++ends;
    if (k.kind == KeypointKind::Junction) ++junctions;
    CHECK(s.mask.get(k.pos.row, k.pos.col));
  }
  CHECK(ends == 2);
  CHECK(junctions == 0);
  for (int c = 2; c < 9; ++c) {
    int n = 0;
    for (int r = 0; r < 3; ++r) n += s.mask.get(r, c);
    CHECK(n == 1);
  }
}

TEST_CASE("skeleton of a plus sign has one junction cluster and four ends") {
  BinaryImage plus(15, 15, false);
  draw_rect(plus, 6, 0, 8, 14);
  draw_rect(plus, 0, 6, 14, 8);
  const Skeleton s = skeletonize(plus);
  int ends = 0, junctions = 0;
  for (const Keypoint& k : s.keypoints) {
    if (k.kind == KeypointKind::End) ++ends;
    if (k.kind == KeypointKind::Junction) ++junctions;
  }
  CHECK(ends == 4);
  CHECK(junctions >= 1);
  for (const Keypoint& k : s.keypoints)
    if (k.kind == KeypointKind::Junction) {
      CHECK(std::abs(k.pos.row - 7) <= 1);
      CHECK(std::abs(k.pos.col - 7) <= 1);
    }
}

TEST_CASE("L corner yields one high-curvature keypoint at the bend") {
  // Thin L whose skeleton is the shape itself, so the tangent-angle oracle
  // below can retrace it exactly.
  BinaryImage ell(20, 20, false);
  draw_rect(ell, 0, 1, 18, 1);
  draw_rect(ell, 18, 1, 18, 19);
  const Skeleton s = skeletonize(ell);
  std::vector<Coord> hc;
  for (const Keypoint& k : s.keypoints)
    if (k.kind == KeypointKind::HighCurvature) hc.push_back(k.pos);
  REQUIRE(hc.size() == 1);

  // Oracle: walk the path from (0,1) and find where the direction measured
  // across a 5-pixel arc turns by >= 45 degrees.
  std::vector<Coord> path;
  for (int r = 0; r <= 18; ++r) path.push_back({r, 1});
  for (int c = 2; c <= 19; ++c) path.push_back({18, c});
  double best_turn = 0.0;
  Coord best{-1, -1};
  for (size_t i = 2; i + 2 < path.size(); ++i) {
    const double v1r = path[i].row - path[i - 2].row;
    const double v1c = path[i].col - path[i - 2].col;
    const double v2r = path[i + 2].row - path[i].row;
    const double v2c = path[i + 2].col - path[i].col;
    const double cosv = (v1r * v2r + v1c * v2c) /
                        (std::hypot(v1r, v1c) * std::hypot(v2r, v2c));
    const double turn = std::acos(std::clamp(cosv, -1.0, 1.0)) * 180.0 /
                        3.14159265358979323846;
    if (turn > best_turn) {
      best_turn = turn;
      best = path[i];
    }
  }
  CHECK(best_turn >= 45.0);
  CHECK(hc[0] == best);
}

TEST_CASE("stroke width is the run-length mode, ties to smaller") {
  BinaryImage bar(40, 3, false);
  draw_rect(bar, 0, 0, 2, 39);
  CHECK(stroke_width(bar).value == 3);

  BinaryImage two(40, 12, false);
  draw_rect(two, 0, 0, 1, 39);  // thickness 2, long
  draw_rect(two, 5, 0, 9, 7);   // thickness 5, short
  CHECK(stroke_width(two).value == 2);

  CHECK_THROWS_AS(stroke_width(BinaryImage(4, 4, false)), InputError);

  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryImage m = random_mask(rng, 20, 14, 0.45);
    if (m.foreground_count() == 0) continue;
    std::map<int, int> runs;
    auto add_run = [&](int len) {
      if (len > 0) ++runs[len];
    };
    for (int r = 0; r < m.height; ++r) {
      int len = 0;
      for (int c = 0; c < m.width; ++c) {
        if (m.get(r, c)) ++len;
        else {
          add_run(len);
          len = 0;
        }
      }
      add_run(len);
    }
    for (int c = 0; c < m.width; ++c) {
      int len = 0;
      for (int r = 0; r < m.height; ++r) {
        if (m.get(r, c)) ++len;
        else {
          add_run(len);
          len = 0;
        }
      }
      add_run(len);
    }
    int best = 0, best_n = 0;
    for (auto [len, n] : runs)
      if (n > best_n) {
        best_n = n;
        best = len;
      }
    CHECK(stroke_width(m).value == best);
  }
}

TEST_CASE("word height is the column-extent mode, ties to larger") {
  BinaryImage rect(50, 20, false);
  draw_rect(rect, 0, 0, 19, 49);
  CHECK(word_height(rect) == 20);

  BinaryImage spike(50, 30, false);
  draw_rect(spike, 10, 0, 29, 49);
  draw_rect(spike, 0, 25, 29, 25);
  CHECK(word_height(spike) == 20);

  CHECK_THROWS_AS(word_height(BinaryImage(4, 4, false)), InputError);

  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryImage m = random_mask(rng, 25, 18, 0.4);
    if (m.foreground_count() == 0) continue;
    std::map<int, int> hist;
    for (int c = 0; c < m.width; ++c) {
      int top = -1, bottom = -1;
      for (int r = 0; r < m.height; ++r)
        if (m.get(r, c)) {
          if (top < 0) top = r;
          bottom = r;
        }
      if (top >= 0) ++hist[bottom - top + 1];
    }
    int best = 0, best_n = 0;
    for (auto [hh, n] : hist)
      if (n >= best_n) {
        best_n = n;
        best = hh;
      }
    CHECK(word_height(m) == best);
  }
}

TEST_CASE("rotate: identity, round trip IoU, foreground preservation") {
  BinaryImage thick(60, 40, false);
  draw_rect(thick, 10, 5, 30, 55);
  draw_rect(thick, 5, 20, 35, 28);

  CHECK(rotate(thick, 0.0) == thick);

  for (double theta : {5.0, 10.0, 15.0, -7.0}) {
    const BinaryImage fwd = rotate(thick, theta);
    const int fg0 = thick.foreground_count();
    const int fg1 = fwd.foreground_count();
    CHECK(std::abs(fg1 - fg0) <= 0.02 * fg0 + 2);

    const BinaryImage back = rotate(fwd, -theta);
    auto centroid = [](const BinaryImage& im) {
      double r = 0, c = 0;
      int n = 0;
      for (int rr = 0; rr < im.height; ++rr)
        for (int cc = 0; cc < im.width; ++cc)
          if (im.get(rr, cc)) {
            r += rr;
            c += cc;
            ++n;
          }
      return std::pair<double, double>{r / n, c / n};
    };
    const auto [r0, c0] = centroid(thick);
    const auto [r1, c1] = centroid(back);
    const int dr = static_cast<int>(std::lround(r1 - r0));
    const int dc = static_cast<int>(std::lround(c1 - c0));
    int inter = 0, uni = 0;
    for (int r = 0; r < back.height; ++r) {
      for (int c = 0; c < back.width; ++c) {
        const bool b = back.get(r, c);
        const int rr = r - dr, cc = c - dc;
        const bool a = thick.in_bounds(rr, cc) && thick.get(rr, cc);
        inter += a && b;
        uni += a || b;
      }
    }
    CHECK(static_cast<double>(inter) / uni >= 0.9);
  }
}

TEST_CASE("positive rotation tilts a horizontal line downward to the right") {
  BinaryImage line(60, 21, false);
  draw_rect(line, 10, 2, 10, 57);
  const BinaryImage rot = rotate(line, 8.0);
  // leftmost vs rightmost ink rows
  double left_row = 0, right_row = 0;
  int left_n = 0, right_n = 0;
  for (int r = 0; r < rot.height; ++r)
    for (int c = 0; c < rot.width; ++c)
      if (rot.get(r, c)) {
        if (c < rot.width / 3) {
          left_row += r;
          ++left_n;
        }
        if (c > 2 * rot.width / 3) {
          right_row += r;
          ++right_n;
        }
      }
  REQUIRE(left_n > 0);
  REQUIRE(right_n > 0);
  CHECK(right_row / right_n > left_row / left_n + 2.0);
}

TEST_CASE("shear displaces the top of a vertical bar by height*tan(phi)") {
  BinaryImage bar(9, 41, false);
  draw_rect(bar, 0, 4, 40, 4);
  for (double phi : {10.0, 20.0, -15.0}) {
    const BinaryImage sh = shear(bar, phi);
    int top_col = -1, bot_col = -1;
    for (int c = 0; c < sh.width; ++c) {
      if (sh.get(0, c)) top_col = c;
      if (sh.get(40, c)) bot_col = c;
    }
    REQUIRE(top_col >= 0);
    REQUIRE(bot_col >= 0);
    const double expect = 40.0 * std::tan(phi * 3.14159265358979 / 180.0);
    CHECK(std::abs((top_col - bot_col) - expect) <= 1.0 + 1e-9);
    CHECK(sh.foreground_count() >= bar.foreground_count() - 2);
  }
  CHECK(shear(bar, 0.0) == bar);
}

TEST_CASE("bresenham paths are 8-connected and inclusive") {
  const auto flat = bresenham({0, 0}, {0, 4});
  CHECK(flat.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(flat[i] == Coord{0, i});

  const auto diag = bresenham({0, 0}, {3, 3});
  CHECK(diag.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(diag[i] == Coord{i, i});

  const auto mixed = bresenham({0, 0}, {2, 5});
  CHECK(mixed.size() == 6);
  CHECK(mixed.front() == Coord{0, 0});
  CHECK(mixed.back() == Coord{2, 5});
  for (size_t i = 1; i < mixed.size(); ++i) {
    CHECK(std::abs(mixed[i].row - mixed[i - 1].row) <= 1);
    CHECK(std::abs(mixed[i].col - mixed[i - 1].col) <= 1);
  }

  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Coord p{rng.uniform_int(-20, 20), rng.uniform_int(-20, 20)};
    const Coord q{rng.uniform_int(-20, 20), rng.uniform_int(-20, 20)};
    const auto path = bresenham(p, q);
    CHECK(path.front() == p);
    CHECK(path.back() == q);
    CHECK(static_cast<int>(path.size()) ==
          std::max(std::abs(p.row - q.row), std::abs(p.col - q.col)) + 1);
  }
}

TEST_CASE("gaussian smoothing: constant, impulse, 2-D oracle") {
  RasterImage flat(12, 9, 77);
  CHECK(gaussian_smooth(flat, 1.0) == flat);

  RasterImage imp(15, 15, 0);
  imp.at(7, 7) = 255;
  const RasterImage resp = gaussian_smooth(imp, 1.0);
  for (int d = 1; d <= 3; ++d) {
    CHECK(resp.at(7, 7 + d) == resp.at(7, 7 - d));
    CHECK(resp.at(7 + d, 7) == resp.at(7 - d, 7));
    CHECK(resp.at(7 + d, 7) == resp.at(7, 7 + d));
  }
  CHECK(resp.at(7, 7) > resp.at(7, 8));

  RasterImage step(20, 12, 0);
  for (int r = 0; r < 12; ++r)
    for (int c = 10; c < 20; ++c) step.at(r, c) = 200;
  const RasterImage got = gaussian_smooth(step, 1.0);
  const int radius = 3;
  std::vector<double> k1(2 * radius + 1);
  double ksum = 0;
  for (int i = -radius; i <= radius; ++i) {
    k1[i + radius] = std::exp(-0.5 * i * i);
    ksum += k1[i + radius];
  }
  for (auto& v : k1) v /= ksum;
  for (int r = radius; r < 12 - radius; ++r) {
    for (int c = radius; c < 20 - radius; ++c) {
      double acc = 0;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
          acc += k1[dy + radius] * k1[dx + radius] * step.at(r + dy, c + dx);
      CHECK(std::abs(got.at(r, c) - acc) <= 0.5 + 1e-6);
    }
  }
}

TEST_CASE("noise injection: level 0 identity, sigma calibration, determinism") {
  Rng rng(3);
  const RasterImage img = random_gray(rng, 40, 40);
  CHECK(add_noise(img, 0.0, 42) == img);

  RasterImage mid(200, 200, 128);
  const RasterImage noisy = add_noise(mid, 0.2, 42);
  double mean = 0;
  for (auto v : noisy.samples) mean += v;
  mean /= static_cast<double>(noisy.samples.size());
  double var = 0;
  for (auto v : noisy.samples) var += (v - mean) * (v - mean);
  var /= static_cast<double>(noisy.samples.size());
  const double sigma = std::sqrt(var);
  CHECK(std::abs(sigma - 51.0) / 51.0 < 0.05);

  CHECK(add_noise(mid, 0.2, 42) == noisy);
  CHECK(add_noise(mid, 0.2, 43) != noisy);
}

TEST_CASE("morph close bridges small gaps and matches the dilate-erode oracle") {
  BinaryImage gap(12, 5, false);
  draw_rect(gap, 1, 0, 3, 4);
  draw_rect(gap, 1, 6, 3, 11);
  CHECK(connected_components(gap, 8).size() == 2);
  const BinaryImage closed = morph_close(gap, 1);
  CHECK(closed.get(2, 5));
  CHECK(connected_components(closed, 8).size() == 1);

  Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    BinaryImage m = random_mask(rng, 18, 14, 0.3);
    const int radius = rng.uniform_int(1, 3);
    const BinaryImage got = morph_close(m, radius);
    for (int r = 0; r < m.height; ++r)
      for (int c = 0; c < m.width; ++c)
        if (m.get(r, c)) CHECK(got.get(r, c));

    BinaryImage dil(m.width, m.height, false);
    for (int r = 0; r < m.height; ++r)
      for (int c = 0; c < m.width; ++c) {
        bool any = false;
        for (int dr = -radius; dr <= radius && !any; ++dr)
          for (int dc = -radius; dc <= radius && !any; ++dc)
            if (dr * dr + dc * dc <= radius * radius &&
                m.in_bounds(r + dr, c + dc) && m.get(r + dr, c + dc))
              any = true;
        dil.set(r, c, any);
      }
    for (int r = 0; r < m.height; ++r)
      for (int c = 0; c < m.width; ++c) {
        bool all = true;
        for (int dr = -radius; dr <= radius && all; ++dr)
          for (int dc = -radius; dc <= radius && all; ++dc)
            if (dr * dr + dc * dc <= radius * radius &&
                m.in_bounds(r + dr, c + dc) && !dil.get(r + dr, c + dc))
              all = false;
        CHECK(got.get(r, c) == all);
      }
  }
}
