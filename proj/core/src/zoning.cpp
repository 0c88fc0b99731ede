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

#include "zonerec/zoning.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace zonerec {

namespace {

size_t pix_index(const BinaryImage& im, Coord p) {
  return static_cast<size_t>(p.row) * im.width + p.col;
}

}  // namespace

MatraCandidates matra_candidates(const BinaryImage& bin) {
  if (bin.foreground_count() == 0)
    throw InputError("matra_candidates: empty foreground");
  MatraCandidates c;
  c.h = word_height(bin);
  c.t_h = c.h / 10;

  const std::vector<int> p = horizontal_projection(bin);
  int best = -1;
  for (int r = 0; r < bin.height; ++r)
    if (p[r] > best) {
      best = p[r];
      c.r1 = r;
    }

  const StrokeWidth sw = stroke_width(bin);
  std::vector<Coord> points;
  for (const Reservoir& r : filter_reservoirs(bottom_reservoirs(bin), sw))
    points.insert(points.end(), r.depth_points.begin(), r.depth_points.end());
  if (points.empty()) {
    c.r2 = c.r1;
    c.r2_fallback = true;
  } else {
    double sum = 0.0;
    for (Coord q : points) sum += q.row;
    c.r2 =
        static_cast<int>(std::lround(sum / static_cast<double>(points.size())));
  }

  // Sharpest single-step projection change in the top 60% of the word; the
  // row below the step carries the estimate.
  const BBox box = bin.foreground_bbox();
  const int band_end =
      box.row0 + static_cast<int>(std::ceil(0.6 * box.height())) - 1;
  int best_step = -1;
  c.r3 = box.row0;
  for (int r = box.row0; r <= std::min(band_end, bin.height - 1); ++r) {
    const int above = r > 0 ? p[r - 1] : 0;
    const int step = std::abs(p[r] - above);
    if (step > best_step) {
      best_step = step;
      c.r3 = r;
    }
  }
  return c;
}

MatraBranch select_matra_branch(const MatraCandidates& c) {
  if (std::abs(c.r1 - c.r2) <= c.t_h || std::abs(c.r1 - c.r3) <= c.t_h)
    return MatraBranch::R1;
  if (std::abs(c.r2 - c.r3) <= c.t_h) return MatraBranch::R2;
  return MatraBranch::R3;
}

int select_matra_row(const MatraCandidates& c) {
  switch (select_matra_branch(c)) {
    case MatraBranch::R1: return c.r1;
    case MatraBranch::R2: return c.r2;
    case MatraBranch::R3: return c.r3;
  }
  return c.r1;
}

MatraPath extract_matra(const BinaryImage& bin, const Skeleton& skel, int row,
                        StrokeWidth s_w) {
  MatraPath path;
  const int height = bin.height;
  row = std::clamp(row, 0, height - 1);
  path.band_top = std::max(0, row - 2 * s_w.value);
  path.band_bottom = std::min(height - 1, path.band_top + 4 * s_w.value - 1);
  path.rows.assign(bin.width, -1);

  const BinaryImage& sk = skel.mask;
  std::vector<std::uint8_t> is_key(sk.mask.size(), 0);
  for (const Keypoint& k : skel.keypoints) is_key[pix_index(sk, k.pos)] = 1;

  auto in_band = [&](Coord p) {
    return p.row >= path.band_top && p.row <= path.band_bottom;
  };

  std::vector<int> raw(bin.width, -1);
  bool any = false;
  auto retain = [&](const std::vector<Coord>& seg) {
    for (Coord p : seg)
      if (!in_band(p)) return;
    for (Coord p : seg) {
      if (raw[p.col] < 0 || p.row < raw[p.col]) raw[p.col] = p.row;
      any = true;
    }
  };

  // Segments between keypoints; a segment crossing the band edge is a
  // character portion, not headline, and is dropped whole.
  std::vector<std::uint8_t> visited(sk.mask.size(), 0);
  for (int r = 0; r < sk.height; ++r) {
    for (int cc = 0; cc < sk.width; ++cc) {
      const Coord anchor{r, cc};
      if (!sk.get(r, cc) || !is_key[pix_index(sk, anchor)]) continue;
      for (Coord next : skeleton_neighbors(sk, anchor)) {
        if (is_key[pix_index(sk, next)]) {
          retain({anchor, next});
          continue;
        }
        if (visited[pix_index(sk, next)]) continue;
        std::vector<Coord> seg{anchor};
        Coord prev = anchor, cur = next;
        while (true) {
          seg.push_back(cur);
          if (is_key[pix_index(sk, cur)]) break;
          visited[pix_index(sk, cur)] = 1;
          Coord nxt{-1, -1};
          for (Coord q : skeleton_neighbors(sk, cur))
            if (q != prev && !visited[pix_index(sk, q)]) {
              nxt = q;
              break;
            }
          if (nxt.row < 0) {
            for (Coord q : skeleton_neighbors(sk, cur))
              if (q != prev && is_key[pix_index(sk, q)]) {
                nxt = q;
                break;
              }
            if (nxt.row < 0) break;
            seg.push_back(nxt);
            break;
          }
          prev = cur;
          cur = nxt;
        }
        retain(seg);
      }
    }
  }
  // Keypoint-free cycles.
  for (int r = 0; r < sk.height; ++r) {
    for (int cc = 0; cc < sk.width; ++cc) {
      const Coord start{r, cc};
      if (!sk.get(r, cc) || visited[pix_index(sk, start)] ||
          is_key[pix_index(sk, start)])
        continue;
      if (skeleton_neighbors(sk, start).size() != 2) continue;
      std::vector<Coord> seg;
      Coord prev{-1, -1}, cur = start;
      while (cur.row >= 0 && !visited[pix_index(sk, cur)]) {
        visited[pix_index(sk, cur)] = 1;
        seg.push_back(cur);
        Coord nxt{-1, -1};
        for (Coord q : skeleton_neighbors(sk, cur))
          if (q != prev && !visited[pix_index(sk, q)]) {
            nxt = q;
            break;
          }
        prev = cur;
        cur = nxt;
      }
      retain(seg);
    }
  }

  if (!any) {
    path.synthetic = true;
    const int fixed = std::clamp(row, path.band_top, path.band_bottom);
    std::fill(path.rows.begin(), path.rows.end(), fixed);
    return path;
  }

  // Climb each retained pixel to the top edge of its stroke (within the
  // band) so the headline's own thickness is not split into the upper zone.
  for (int ccol = 0; ccol < bin.width; ++ccol) {
    if (raw[ccol] < 0) continue;
    int rr = raw[ccol];
    while (rr - 1 >= path.band_top && bin.get(rr - 1, ccol)) --rr;
    path.rows[ccol] = rr;
  }

  // Bridge gaps between nearest covered columns.
  int prev_col = -1;
  for (int ccol = 0; ccol < bin.width; ++ccol) {
    if (path.rows[ccol] < 0) continue;
    if (prev_col >= 0 && ccol - prev_col > 1) {
      for (Coord p : bresenham({path.rows[prev_col], prev_col},
                               {path.rows[ccol], ccol}))
        if (path.rows[p.col] < 0 || p.row < path.rows[p.col])
          path.rows[p.col] = p.row;
    }
    prev_col = ccol;
  }
  // Extend flat to the borders.
  int first = -1, last = -1;
  for (int ccol = 0; ccol < bin.width; ++ccol)
    if (path.rows[ccol] >= 0) {
      if (first < 0) first = ccol;
      last = ccol;
    }
  for (int ccol = 0; ccol < first; ++ccol) path.rows[ccol] = path.rows[first];
  for (int ccol = last + 1; ccol < bin.width; ++ccol)
    path.rows[ccol] = path.rows[last];
  return path;
}

UpperSplit split_upper(const BinaryImage& bin, const MatraPath& matra) {
  UpperSplit out;
  out.upper = BinaryImage(bin.width, bin.height, false);
  for (int c = 0; c < bin.width; ++c) {
    const int limit = std::min(matra.rows[c], bin.height);
    for (int r = 0; r < limit; ++r)
      if (bin.get(r, c)) out.upper.set(r, c, true);
  }
  for (Component& comp : connected_components(out.upper, 8)) {
    ZoneModifier mod;
    mod.col0 = comp.bbox.col0;
    mod.col1 = comp.bbox.col1;
    mod.comp = std::move(comp);
    out.mods.push_back(std::move(mod));
  }
  std::sort(out.mods.begin(), out.mods.end(),
            [](const ZoneModifier& a, const ZoneModifier& b) {
              return a.col0 < b.col0 || (a.col0 == b.col0 && a.col1 < b.col1);
            });
  return out;
}

namespace {

struct SkeletonGraph {
  std::vector<std::uint8_t> on_loop;  // incident to a non-bridge edge
};

// Bridge detection (iterative lowlink DFS) over the skeleton pixel graph;
// a pixel is marked on_loop when one of its edges lies on a cycle.
SkeletonGraph analyze_skeleton(const BinaryImage& sk) {
  SkeletonGraph g;
  g.on_loop.assign(sk.mask.size(), 0);

  std::vector<int> disc(sk.mask.size(), -1), low(sk.mask.size(), 0);
  int timer = 0;

  struct Frame {
    Coord v;
    Coord parent;
    std::vector<Coord> nbrs;
    size_t next = 0;
  };

  for (int r = 0; r < sk.height; ++r) {
    for (int c = 0; c < sk.width; ++c) {
      const Coord root{r, c};
      if (!sk.get(r, c) || disc[pix_index(sk, root)] >= 0) continue;
      std::vector<Frame> stack;
      disc[pix_index(sk, root)] = low[pix_index(sk, root)] = timer++;
      stack.push_back({root, {-1, -1}, skeleton_neighbors(sk, root), 0});
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.nbrs.size()) {
          const Coord u = f.nbrs[f.next++];
          if (u == f.parent) continue;
          const size_t ui = pix_index(sk, u);
          if (disc[ui] >= 0) {
            low[pix_index(sk, f.v)] =
                std::min(low[pix_index(sk, f.v)], disc[ui]);
          } else {
            disc[ui] = low[ui] = timer++;
            stack.push_back({u, f.v, skeleton_neighbors(sk, u), 0});
          }
        } else {
          const Coord v = f.v;
          const Coord parent = f.parent;
          stack.pop_back();
          if (parent.row >= 0) {
            const size_t vi = pix_index(sk, v), pi = pix_index(sk, parent);
            low[pi] = std::min(low[pi], low[vi]);
            if (low[vi] <= disc[pi]) {
              // the edge parent-v lies on a cycle
              g.on_loop[vi] = 1;
              g.on_loop[pi] = 1;
            }
          }
        }
      }
    }
  }
  return g;
}

// Walks from a lower end point to the cut junction. When the first junction
// sits on a loop the cut moves to the next junction around the loop, so the
// loop stays with the candidate. Returns {-1,-1} when no junction exists.
Coord find_cut(const BinaryImage& sk, const SkeletonGraph& g, Coord end) {
  Coord prev{-1, -1}, cur = end;
  std::set<std::pair<int, int>> seen;
  while (true) {
    seen.insert({cur.row, cur.col});
    const auto nbrs = skeleton_neighbors(sk, cur);
    if (static_cast<int>(nbrs.size()) >= 3 && cur != end) break;
    Coord nxt{-1, -1};
    for (Coord q : nbrs)
      if (q != prev && !seen.count({q.row, q.col})) {
        nxt = q;
        break;
      }
    if (nxt.row < 0) return {-1, -1};
    prev = cur;
    cur = nxt;
  }

  const Coord j1 = cur;
  if (!g.on_loop[pix_index(sk, j1)]) return j1;

  std::deque<Coord> queue{j1};
  std::set<std::pair<int, int>> vis{{j1.row, j1.col}};
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    for (Coord q : skeleton_neighbors(sk, p)) {
      if (!g.on_loop[pix_index(sk, q)]) continue;
      if (!vis.insert({q.row, q.col}).second) continue;
      if (q != j1 && skeleton_neighbors(sk, q).size() >= 3) return q;
      queue.push_back(q);
    }
  }
  return j1;  // no junction beyond the loop
}

// Skeleton pixels on the end-point side of the cut.
std::vector<Coord> residue_skeleton(const BinaryImage& sk, Coord cut,
                                    Coord end) {
  std::vector<Coord> out;
  std::deque<Coord> queue{end};
  std::set<std::pair<int, int>> vis{{end.row, end.col}};
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    out.push_back(p);
    for (Coord q : skeleton_neighbors(sk, p)) {
      if (q == cut) continue;
      if (vis.insert({q.row, q.col}).second) queue.push_back(q);
    }
  }
  return out;
}

}  // namespace

LowerSplit split_lower(const BinaryImage& body, const Skeleton& skel,
                       int matra_row, const ModifierScorer* scorer) {
  LowerSplit out;
  out.middle = body;
  out.lower = BinaryImage(body.width, body.height, false);
  const int l1_top = (matra_row + body.height - 1) / 2 + 1;

  // Components living wholly in the lower half split off directly.
  std::vector<std::uint8_t> detached(body.mask.size(), 0);
  for (Component& comp : connected_components(body, 8)) {
    if (comp.bbox.row0 < l1_top) continue;
    for (Coord p : comp.pixels) {
      out.middle.set(p.row, p.col, false);
      out.lower.set(p.row, p.col, true);
      detached[pix_index(body, p)] = 1;
    }
    ZoneModifier mod;
    mod.col0 = comp.bbox.col0;
    mod.col1 = comp.bbox.col1;
    mod.comp = std::move(comp);
    out.mods.push_back(std::move(mod));
  }
  if (!scorer) return out;

  // Touching candidates: lower end points of the remaining skeleton,
  // lowermost per column.
  const BinaryImage& sk = skel.mask;
  std::map<int, Coord> per_col;
  for (const Keypoint& k : skel.keypoints) {
    if (k.kind != KeypointKind::End || k.pos.row < l1_top) continue;
    if (detached[pix_index(body, k.pos)]) continue;
    if (!out.middle.get(k.pos.row, k.pos.col)) continue;
    auto [it, fresh] = per_col.try_emplace(k.pos.col, k.pos);
    if (!fresh && k.pos.row > it->second.row) it->second = k.pos;
  }
  if (per_col.empty()) return out;

  const SkeletonGraph graph = analyze_skeleton(sk);

  for (const auto& [col, end] : per_col) {
    if (!out.middle.get(end.row, end.col)) continue;  // consumed already
    const Coord cut = find_cut(sk, graph, end);
    if (cut.row < 0) continue;
    const std::vector<Coord> branch = residue_skeleton(sk, cut, end);

    // Partition the remaining ink by nearest skeleton side: multi-source
    // BFS seeded with branch (1) and body (2) skeleton pixels; first
    // arrival wins, body seeds enqueue after branch seeds on equal rings.
    std::set<std::pair<int, int>> branch_set;
    for (Coord p : branch) branch_set.insert({p.row, p.col});

    std::deque<Coord> queue;
    std::vector<std::int8_t> side(body.mask.size(), 0);
    for (int r = 0; r < sk.height; ++r)
      for (int c = 0; c < sk.width; ++c)
        if (sk.get(r, c) && out.middle.get(r, c)) {
          side[pix_index(body, {r, c})] = branch_set.count({r, c}) ? 1 : 2;
          queue.push_back({r, c});
        }
    while (!queue.empty()) {
      const Coord p = queue.front();
      queue.pop_front();
      const std::int8_t s = side[pix_index(body, p)];
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = p.row + dr, nc = p.col + dc;
          if ((dr == 0 && dc == 0) || !body.in_bounds(nr, nc)) continue;
          if (!out.middle.get(nr, nc)) continue;
          auto& target = side[pix_index(body, {nr, nc})];
          if (target == 0) {
            target = s;
            queue.push_back({nr, nc});
          }
        }
    }

    std::vector<Coord> residue_pixels;
    for (int r = 0; r < body.height; ++r)
      for (int c = 0; c < body.width; ++c)
        if (side[pix_index(body, {r, c})] == 1) residue_pixels.push_back({r, c});
    if (residue_pixels.empty()) continue;

    BBox box;
    for (Coord p : residue_pixels) box.expand(p);
    BinaryImage crop_im(box.width(), box.height(), false);
    for (Coord p : residue_pixels)
      crop_im.set(p.row - box.row0, p.col - box.col0, true);

    const std::map<std::string, double> post = (*scorer)(crop_im);
    std::string top_label;
    double top = -1.0, second = -1.0;
    for (const auto& [label, prob] : post) {
      if (prob > top) {
        second = top;
        top = prob;
        top_label = label;
      } else if (prob > second) {
        second = prob;
      }
    }
    const bool is_modifier = !top_label.empty() && top_label != kRejectLabel;
    const bool confident = top > 0.6 || (second >= 0.0 && top - second > 0.3);
    if (!is_modifier || !confident) continue;

    Component comp;
    comp.id = static_cast<int>(out.mods.size());
    comp.pixels = residue_pixels;
    comp.bbox = box;
    for (Coord p : residue_pixels) {
      out.middle.set(p.row, p.col, false);
      out.lower.set(p.row, p.col, true);
    }
    ZoneModifier mod;
    mod.col0 = box.col0;
    mod.col1 = box.col1;
    mod.comp = std::move(comp);
    out.mods.push_back(std::move(mod));
  }

  std::sort(out.mods.begin(), out.mods.end(),
            [](const ZoneModifier& a, const ZoneModifier& b) {
              return a.col0 < b.col0 || (a.col0 == b.col0 && a.col1 < b.col1);
            });
  return out;
}

ZoneSplit split_zones(const BinaryImage& bin, const ModifierScorer* scorer) {
  ZoneSplit out;
  out.no_scorer = scorer == nullptr;
  out.candidates = matra_candidates(bin);
  out.branch = select_matra_branch(out.candidates);
  out.matra_row = select_matra_row(out.candidates);
  const StrokeWidth sw = stroke_width(bin);
  out.stroke = sw.value;

  const Skeleton skel = skeletonize(bin);
  out.matra = extract_matra(bin, skel, out.matra_row, sw);

  UpperSplit up = split_upper(bin, out.matra);
  out.upper = std::move(up.upper);
  out.upper_mods = std::move(up.mods);

  BinaryImage body = bin;
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c)
      if (out.upper.get(r, c)) body.set(r, c, false);

  LowerSplit low = split_lower(body, skel, out.matra_row, scorer);
  out.middle = std::move(low.middle);
  out.lower = std::move(low.lower);
  out.lower_mods = std::move(low.mods);
  return out;
}

}  // namespace zonerec
