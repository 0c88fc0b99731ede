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

#include "zonerec/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>

namespace zonerec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

// 8-neighborhood in fixed scan order (N, NE, E, SE, S, SW, W, NW).
constexpr std::array<std::pair<int, int>, 8> kNbr8 = {{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}}};
constexpr std::array<std::pair<int, int>, 4> kNbr4 = {{
    {-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

}  // namespace

int BinaryImage::foreground_count() const {
  int n = 0;
  for (std::uint8_t v : mask) n += v != 0;
  return n;
}

BBox BinaryImage::foreground_bbox() const {
  BBox box;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (get(r, c)) box.expand({r, c});
  return box;
}

OtsuResult otsu_binarize(const RasterImage& img) {
  if (img.width < 1 || img.height < 1 || img.samples.empty())
    throw InputError("otsu_binarize: degenerate image");

  std::array<std::int64_t, 256> hist{};
  for (std::uint8_t v : img.samples) ++hist[v];
  const double total = static_cast<double>(img.samples.size());

  double sum_all = 0.0;
  for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * hist[v];

  // Split at t: class0 = values <= t, class1 = values > t.
  double best_var = 0.0;
  int best_t = -1;
  double w0 = 0.0, sum0 = 0.0;
  for (int t = 0; t < 255; ++t) {
    w0 += hist[t];
    sum0 += static_cast<double>(t) * hist[t];
    const double w1 = total - w0;
    if (w0 <= 0.0 || w1 <= 0.0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (sum_all - sum0) / w1;
    const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }

  OtsuResult out;
  out.image = BinaryImage(img.width, img.height, false);
  if (best_t < 0) {
    out.degenerate = true;
    out.threshold = 0;
    return out;
  }
  out.threshold = best_t + 1;  // foreground = value < threshold
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c)
      if (img.at(r, c) < out.threshold) out.image.set(r, c, true);
  return out;
}

std::vector<Component> connected_components(const BinaryImage& bin,
                                            int connectivity) {
  if (connectivity != 4 && connectivity != 8)
    throw InputError("connected_components: connectivity must be 4 or 8");

  std::vector<int> label(bin.mask.size(), -1);
  std::vector<Component> out;
  std::deque<Coord> queue;

  for (int r = 0; r < bin.height; ++r) {
    for (int c = 0; c < bin.width; ++c) {
      const size_t idx = static_cast<size_t>(r) * bin.width + c;
      if (!bin.get(r, c) || label[idx] >= 0) continue;
      Component comp;
      comp.id = static_cast<int>(out.size());
      label[idx] = comp.id;
      queue.push_back({r, c});
      while (!queue.empty()) {
        const Coord p = queue.front();
        queue.pop_front();
        comp.pixels.push_back(p);
        comp.bbox.expand(p);
        auto visit = [&](int nr, int nc) {
          if (!bin.in_bounds(nr, nc) || !bin.get(nr, nc)) return;
          const size_t nidx = static_cast<size_t>(nr) * bin.width + nc;
          if (label[nidx] >= 0) return;
          label[nidx] = comp.id;
          queue.push_back({nr, nc});
        };
        if (connectivity == 8) {
          for (auto [dr, dc] : kNbr8) visit(p.row + dr, p.col + dc);
        } else {
          for (auto [dr, dc] : kNbr4) visit(p.row + dr, p.col + dc);
        }
      }
      std::sort(comp.pixels.begin(), comp.pixels.end());
      out.push_back(std::move(comp));
    }
  }
  return out;
}

BinaryImage rlsa_horizontal(const BinaryImage& bin, int gap) {
  if (gap < 0) throw InputError("rlsa_horizontal: gap must be >= 0");
  BinaryImage out = bin;
  for (int r = 0; r < bin.height; ++r) {
    int last_fg = -1;
    for (int c = 0; c < bin.width; ++c) {
      if (!bin.get(r, c)) continue;
      if (last_fg >= 0 && c - last_fg - 1 <= gap) {
        for (int k = last_fg + 1; k < c; ++k) out.set(r, k, true);
      }
      last_fg = c;
    }
  }
  return out;
}

namespace {

int neighbor_count(const BinaryImage& im, int r, int c) {
  int n = 0;
  for (auto [dr, dc] : kNbr8)
    n += im.in_bounds(r + dr, c + dc) && im.get(r + dr, c + dc);
  return n;
}

// Zhang-Suen helpers: p2..p9 clockwise starting north.
std::array<int, 8> zs_neighbors(const BinaryImage& im, int r, int c) {
  auto px = [&](int rr, int cc) {
    return im.in_bounds(rr, cc) && im.get(rr, cc) ? 1 : 0;
  };
  return {px(r - 1, c),     px(r - 1, c + 1), px(r, c + 1), px(r + 1, c + 1),
          px(r + 1, c),     px(r + 1, c - 1), px(r, c - 1), px(r - 1, c - 1)};
}

BinaryImage zhang_suen(const BinaryImage& bin) {
  BinaryImage im = bin;
  bool changed = true;
  std::vector<Coord> to_clear;
  while (changed) {
    changed = false;
    for (int phase = 0; phase < 2; ++phase) {
      to_clear.clear();
      for (int r = 0; r < im.height; ++r) {
        for (int c = 0; c < im.width; ++c) {
          if (!im.get(r, c)) continue;
          const auto p = zs_neighbors(im, r, c);
          int b = 0;
          for (int v : p) b += v;
          if (b < 2 || b > 6) continue;
          int a = 0;
          for (int k = 0; k < 8; ++k)
            if (p[k] == 0 && p[(k + 1) % 8] == 1) ++a;
          if (a != 1) continue;
          // p[0]=N, p[2]=E, p[4]=S, p[6]=W
          if (phase == 0) {
            if (p[0] * p[2] * p[4] != 0) continue;
            if (p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0) continue;
            if (p[0] * p[4] * p[6] != 0) continue;
          }
          to_clear.push_back({r, c});
        }
      }
      for (Coord q : to_clear) im.set(q.row, q.col, false);
      changed = changed || !to_clear.empty();
    }
  }
  return im;
}

double turn_angle(Coord a, Coord b, Coord c, Coord d) {
  // Angle between vectors a->b and c->d.
  const double v1r = b.row - a.row, v1c = b.col - a.col;
  const double v2r = d.row - c.row, v2c = d.col - c.col;
  const double n1 = std::hypot(v1r, v1c), n2 = std::hypot(v2r, v2c);
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  double cosv = (v1r * v2r + v1c * v2c) / (n1 * n2);
  cosv = std::clamp(cosv, -1.0, 1.0);
  return std::acos(cosv) / kDegToRad;
}

}  // namespace

std::vector<Coord> skeleton_neighbors(const BinaryImage& mask, Coord p) {
  std::vector<Coord> out;
  for (auto [dr, dc] : kNbr8) {
    const int nr = p.row + dr, nc = p.col + dc;
    if (!mask.in_bounds(nr, nc) || !mask.get(nr, nc)) continue;
    if (dr != 0 && dc != 0) {
      // Drop staircase diagonals: the path runs through the orthogonal
      // bridging pixel instead.
      const bool via_row = mask.in_bounds(p.row + dr, p.col) &&
                           mask.get(p.row + dr, p.col);
      const bool via_col = mask.in_bounds(p.row, p.col + dc) &&
                           mask.get(p.row, p.col + dc);
      if (via_row || via_col) continue;
    }
    out.push_back({nr, nc});
  }
  return out;
}

Skeleton skeletonize(const BinaryImage& bin) {
  Skeleton skel;
  skel.mask = zhang_suen(bin);
  const BinaryImage& im = skel.mask;

  std::vector<int> degree(im.mask.size(), 0);
  for (int r = 0; r < im.height; ++r)
    for (int c = 0; c < im.width; ++c)
      if (im.get(r, c))
        degree[static_cast<size_t>(r) * im.width + c] =
            static_cast<int>(skeleton_neighbors(im, {r, c}).size());
  auto deg = [&](Coord p) {
    return degree[static_cast<size_t>(p.row) * im.width + p.col];
  };

  for (int r = 0; r < im.height; ++r) {
    for (int c = 0; c < im.width; ++c) {
      if (!im.get(r, c)) continue;
      if (neighbor_count(im, r, c) == 1)
        skel.keypoints.push_back({{r, c}, KeypointKind::End});
      else if (deg({r, c}) >= 3)
        skel.keypoints.push_back({{r, c}, KeypointKind::Junction});
    }
  }

  // High-curvature detection: walk maximal degree-2 paths and measure the
  // tangent turn across a 5-pixel arc, keeping one point per curvature run.
  std::vector<std::uint8_t> visited(im.mask.size(), 0);
  auto vis = [&](Coord p) -> std::uint8_t& {
    return visited[static_cast<size_t>(p.row) * im.width + p.col];
  };
  auto neighbors_of = [&](Coord p) { return skeleton_neighbors(im, p); };

  std::vector<std::vector<Coord>> paths;
  // Paths anchored at non-degree-2 pixels.
  for (int r = 0; r < im.height; ++r) {
    for (int c = 0; c < im.width; ++c) {
      const Coord anchor{r, c};
      if (!im.get(r, c) || deg(anchor) == 2) continue;
      for (Coord next : neighbors_of(anchor)) {
        if (deg(next) != 2 || vis(next)) continue;
        std::vector<Coord> path{anchor};
        Coord prev = anchor, cur = next;
        while (true) {
          path.push_back(cur);
          if (deg(cur) != 2) break;
          vis(cur) = 1;
          Coord nxt{-1, -1};
          for (Coord q : neighbors_of(cur)) {
            if (q == prev) continue;
            // Skip neighbors already on this path adjacent to prev
            // (diagonal shortcuts in 8-connectivity).
            nxt = q;
            break;
          }
          if (nxt.row < 0) break;
          prev = cur;
          cur = nxt;
        }
        paths.push_back(std::move(path));
      }
    }
  }
  // Pure cycles (no anchors).
  for (int r = 0; r < im.height; ++r) {
    for (int c = 0; c < im.width; ++c) {
      const Coord start{r, c};
      if (!im.get(r, c) || deg(start) != 2 || vis(start)) continue;
      std::vector<Coord> path{start};
      vis(start) = 1;
      Coord prev = start, cur = neighbors_of(start)[0];
      while (cur != start && deg(cur) == 2 && !vis(cur)) {
        path.push_back(cur);
        vis(cur) = 1;
        Coord nxt{-1, -1};
        for (Coord q : neighbors_of(cur))
          if (q != prev) { nxt = q; break; }
        if (nxt.row < 0) break;
        prev = cur;
        cur = nxt;
      }
      paths.push_back(std::move(path));
    }
  }

  for (const auto& path : paths) {
    if (path.size() < 5) continue;
    std::vector<std::pair<int, double>> candidates;  // (index, turn)
    for (size_t i = 2; i + 2 < path.size(); ++i) {
      const double turn =
          turn_angle(path[i - 2], path[i], path[i], path[i + 2]);
      if (turn >= 45.0 - 1e-9) candidates.emplace_back(static_cast<int>(i), turn);
    }
    // Collapse consecutive candidate runs to their strongest member.
    size_t k = 0;
    while (k < candidates.size()) {
      size_t j = k;
      size_t best = k;
      while (j + 1 < candidates.size() &&
             candidates[j + 1].first == candidates[j].first + 1) {
        ++j;
        if (candidates[j].second > candidates[best].second) best = j;
      }
      const Coord p = path[candidates[best].first];
      skel.keypoints.push_back({p, KeypointKind::HighCurvature});
      k = j + 1;
    }
  }
  return skel;
}

StrokeWidth stroke_width(const BinaryImage& bin) {
  std::map<int, int> runs;
  auto scan = [&](bool horizontal) {
    const int outer = horizontal ? bin.height : bin.width;
    const int inner = horizontal ? bin.width : bin.height;
    for (int a = 0; a < outer; ++a) {
      int len = 0;
      for (int b = 0; b <= inner; ++b) {
        const bool fg = b < inner &&
                        (horizontal ? bin.get(a, b) : bin.get(b, a));
        if (fg) {
          ++len;
        } else if (len > 0) {
          ++runs[len];
          len = 0;
        }
      }
    }
  };
  scan(true);
  scan(false);
  if (runs.empty()) throw InputError("stroke_width: empty foreground");
  int best_len = 0, best_count = -1;
  for (auto [len, count] : runs) {
    if (count > best_count) {  // map iterates ascending: ties keep smallest
      best_count = count;
      best_len = len;
    }
  }
  return StrokeWidth{best_len};
}

int word_height(const BinaryImage& bin) {
  std::map<int, int> heights;
  for (int c = 0; c < bin.width; ++c) {
    int top = -1, bottom = -1;
    for (int r = 0; r < bin.height; ++r) {
      if (bin.get(r, c)) {
        if (top < 0) top = r;
        bottom = r;
      }
    }
    if (top >= 0) ++heights[bottom - top + 1];
  }
  if (heights.empty()) throw InputError("word_height: empty foreground");
  int best_h = 0, best_count = 0;
  for (auto [h, count] : heights) {
    if (count >= best_count) {  // ascending iteration: ties keep largest
      best_count = count;
      best_h = h;
    }
  }
  return best_h;
}

namespace {

RasterImage resample(const RasterImage& img, int out_w, int out_h,
                     double m00, double m01, double m10, double m11,
                     double ox, double oy, Interp interp, std::uint8_t fill) {
  // Inverse map: src = M * (dst - out_center) + src_center + (ox, oy)
  RasterImage out(out_w, out_h, fill);
  const double cx = (img.width - 1) / 2.0, cy = (img.height - 1) / 2.0;
  const double dx = (out_w - 1) / 2.0, dy = (out_h - 1) / 2.0;
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      const double xr = c - dx, yr = r - dy;
      const double sx = m00 * xr + m01 * yr + cx + ox;
      const double sy = m10 * xr + m11 * yr + cy + oy;
      if (interp == Interp::Nearest) {
        const int si = static_cast<int>(std::lround(sy));
        const int sj = static_cast<int>(std::lround(sx));
        if (img.in_bounds(si, sj)) out.at(r, c) = img.at(si, sj);
      } else {
        const int x0 = static_cast<int>(std::floor(sx));
        const int y0 = static_cast<int>(std::floor(sy));
        if (x0 < -1 || x0 > img.width - 1 || y0 < -1 || y0 > img.height - 1)
          continue;
        const double fx = sx - x0, fy = sy - y0;
        auto sample = [&](int yy, int xx) -> double {
          if (!img.in_bounds(yy, xx)) return fill;
          return img.at(yy, xx);
        };
        const double v = (1 - fy) * ((1 - fx) * sample(y0, x0) +
                                     fx * sample(y0, x0 + 1)) +
                         fy * ((1 - fx) * sample(y0 + 1, x0) +
                               fx * sample(y0 + 1, x0 + 1));
        out.at(r, c) = static_cast<std::uint8_t>(std::lround(
            std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

RasterImage to_raster(const BinaryImage& bin) {
  RasterImage out(bin.width, bin.height, 0);
  for (size_t i = 0; i < bin.mask.size(); ++i)
    out.samples[i] = bin.mask[i] ? 255 : 0;
  return out;
}

BinaryImage to_binary(const RasterImage& img) {
  BinaryImage out(img.width, img.height, false);
  for (size_t i = 0; i < img.samples.size(); ++i)
    out.mask[i] = img.samples[i] >= 128 ? 1 : 0;
  return out;
}

}  // namespace

RasterImage rotate(const RasterImage& img, double theta_deg, Interp interp,
                   std::uint8_t fill) {
  if (std::abs(theta_deg) > 45.0 + 1e-9)
    throw InputError("rotate: |theta| must be <= 45 degrees");
  if (theta_deg == 0.0) return img;
  const double th = theta_deg * kDegToRad;
  const double ct = std::cos(th), st = std::sin(th);
  // Forward map (x right, y down): x' = ct*x - st*y ; y' = st*x + ct*y.
  const int out_w = static_cast<int>(std::ceil(
      img.width * std::abs(ct) + img.height * std::abs(st)));
  const int out_h = static_cast<int>(std::ceil(
      img.width * std::abs(st) + img.height * std::abs(ct)));
  // Inverse rotation matrix.
  return resample(img, out_w, out_h, ct, st, -st, ct, 0.0, 0.0, interp, fill);
}

BinaryImage rotate(const BinaryImage& bin, double theta_deg) {
  if (theta_deg == 0.0) return bin;
  return to_binary(rotate(to_raster(bin), theta_deg, Interp::Nearest, 0));
}

RasterImage shear(const RasterImage& img, double phi_deg, Interp interp,
                  std::uint8_t fill) {
  if (std::abs(phi_deg) > 45.0 + 1e-9)
    throw InputError("shear: |phi| must be <= 45 degrees");
  if (phi_deg == 0.0) return img;
  const double t = std::tan(phi_deg * kDegToRad);
  // x' = x + (h-1-y)*t: positive phi pushes the top of the image right.
  const double extent = (img.height - 1) * t;
  const int out_w = img.width + static_cast<int>(std::ceil(std::abs(extent)));
  RasterImage out(out_w, img.height, fill);
  const double shift = extent < 0 ? -extent : 0.0;
  for (int r = 0; r < img.height; ++r) {
    const double off = (img.height - 1 - r) * t + shift;
    for (int c = 0; c < out_w; ++c) {
      const double sx = c - off;
      if (interp == Interp::Nearest) {
        const int sj = static_cast<int>(std::lround(sx));
        if (sj >= 0 && sj < img.width) out.at(r, c) = img.at(r, sj);
      } else {
        const int x0 = static_cast<int>(std::floor(sx));
        if (x0 < -1 || x0 > img.width - 1) continue;
        const double fx = sx - x0;
        const double v0 = x0 >= 0 ? img.at(r, x0) : fill;
        const double v1 = x0 + 1 < img.width ? img.at(r, x0 + 1) : fill;
        out.at(r, c) = static_cast<std::uint8_t>(std::lround(
            std::clamp((1 - fx) * v0 + fx * v1, 0.0, 255.0)));
      }
    }
  }
  return out;
}

BinaryImage shear(const BinaryImage& bin, double phi_deg) {
  if (phi_deg == 0.0) return bin;
  return to_binary(shear(to_raster(bin), phi_deg, Interp::Nearest, 0));
}

std::vector<Coord> bresenham(Coord p, Coord q) {
  std::vector<Coord> out;
  int r = p.row, c = p.col;
  const int dr = std::abs(q.row - p.row), dc = std::abs(q.col - p.col);
  const int sr = p.row < q.row ? 1 : -1, sc = p.col < q.col ? 1 : -1;
  int err = dc - dr;
  while (true) {
    out.push_back({r, c});
    if (r == q.row && c == q.col) break;
    const int e2 = 2 * err;
    if (e2 > -dr) {
      err -= dr;
      c += sc;
    }
    if (e2 < dc) {
      err += dc;
      r += sr;
    }
  }
  return out;
}

RasterImage gaussian_smooth(const RasterImage& img, double sigma) {
  if (sigma <= 0.0) throw InputError("gaussian_smooth: sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& v : kernel) v /= sum;

  const int w = img.width, h = img.height;
  std::vector<double> tmp(static_cast<size_t>(w) * h, 0.0);
  // Horizontal pass with clamped edges.
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int cc = std::clamp(c + k, 0, w - 1);
        acc += kernel[k + radius] * img.at(r, cc);
      }
      tmp[static_cast<size_t>(r) * w + c] = acc;
    }
  }
  RasterImage out(w, h, 0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int rr = std::clamp(r + k, 0, h - 1);
        acc += kernel[k + radius] * tmp[static_cast<size_t>(rr) * w + c];
      }
      out.at(r, c) = static_cast<std::uint8_t>(std::lround(
          std::clamp(acc, 0.0, 255.0)));
    }
  }
  return out;
}

RasterImage add_noise(const RasterImage& img, double level,
                      std::uint64_t seed) {
  if (level < 0.0 || level > 1.0)
    throw InputError("add_noise: level must be in [0,1]");
  if (level == 0.0) return img;
  Rng rng(seed);
  const double sigma = level * 255.0;
  RasterImage out = img;
  for (std::uint8_t& v : out.samples) {
    const double nv = v + rng.gauss() * sigma;
    v = static_cast<std::uint8_t>(std::lround(std::clamp(nv, 0.0, 255.0)));
  }
  return out;
}

BinaryImage morph_close(const BinaryImage& bin, int radius) {
  if (radius < 1) throw InputError("morph_close: radius must be >= 1");
  std::vector<std::pair<int, int>> disk;
  for (int dr = -radius; dr <= radius; ++dr)
    for (int dc = -radius; dc <= radius; ++dc)
      if (dr * dr + dc * dc <= radius * radius) disk.emplace_back(dr, dc);

  BinaryImage dil(bin.width, bin.height, false);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c)
      if (bin.get(r, c))
        for (auto [dr, dc] : disk)
          if (bin.in_bounds(r + dr, c + dc)) dil.set(r + dr, c + dc, true);

  // Erosion treats out-of-bounds as foreground so closing never shrinks
  // shapes touching the canvas edge.
  BinaryImage out(bin.width, bin.height, false);
  for (int r = 0; r < bin.height; ++r) {
    for (int c = 0; c < bin.width; ++c) {
      bool keep = true;
      for (auto [dr, dc] : disk) {
        const int rr = r + dr, cc = c + dc;
        if (dil.in_bounds(rr, cc) && !dil.get(rr, cc)) {
          keep = false;
          break;
        }
      }
      out.set(r, c, keep);
    }
  }
  return out;
}

BinaryImage flip_vertical(const BinaryImage& bin) {
  BinaryImage out(bin.width, bin.height, false);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c)
      out.set(bin.height - 1 - r, c, bin.get(r, c));
  return out;
}

BinaryImage crop(const BinaryImage& bin, const BBox& box) {
  if (box.empty()) return BinaryImage(1, 1, false);
  BinaryImage out(box.width(), box.height(), false);
  for (int r = 0; r < out.height; ++r)
    for (int c = 0; c < out.width; ++c)
      out.set(r, c, bin.get(box.row0 + r, box.col0 + c));
  return out;
}

BinaryImage resize_nearest(const BinaryImage& bin, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1)
    throw InputError("resize_nearest: output must be >= 1x1");
  BinaryImage out(out_w, out_h, false);
  for (int r = 0; r < out_h; ++r) {
    const int sr = std::min(bin.height - 1,
                            static_cast<int>(static_cast<std::int64_t>(r) *
                                             bin.height / out_h));
    for (int c = 0; c < out_w; ++c) {
      const int sc = std::min(bin.width - 1,
                              static_cast<int>(static_cast<std::int64_t>(c) *
                                               bin.width / out_w));
      out.set(r, c, bin.get(sr, sc));
    }
  }
  return out;
}

std::vector<int> horizontal_projection(const BinaryImage& bin) {
  std::vector<int> p(bin.height, 0);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c) p[r] += bin.get(r, c);
  return p;
}

std::vector<int> vertical_projection(const BinaryImage& bin) {
  std::vector<int> p(bin.width, 0);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c) p[c] += bin.get(r, c);
  return p;
}

}  // namespace zonerec
