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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zonerec/raster.hpp"
#include "zonerec/reservoir.hpp"

namespace zonerec {

// Candidate headline rows. r1: projection peak; r2: least-squares row of
// reservoir depth points; r3: sharpest single-step projection change in the
// top 60% of the word.
struct MatraCandidates {
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;
  int h = 0;    // word height (column-extent mode)
  int t_h = 0;  // decision threshold, exactly h/10
  bool r2_fallback = false;  // no valid reservoir: r2 copied from r1
};

enum class MatraBranch { R1, R2, R3 };

MatraCandidates matra_candidates(const BinaryImage& bin);

// Headline selection rule: r1 if it agrees with r2 or r3 within t_h, else
// r2 if r2 agrees with r3, else r3.
MatraBranch select_matra_branch(const MatraCandidates& c);
int select_matra_row(const MatraCandidates& c);

// The extracted headline: one row per column (top edge of the headline
// stroke), confined to a band of height 4*S_w centered on the detected row.
struct MatraPath {
  int band_top = 0;
  int band_bottom = 0;  // inclusive; band_bottom - band_top + 1 == 4*S_w
  std::vector<int> rows;
  bool synthetic = false;  // nothing retained in the band: constant row
};

// Walks skeleton segments between keypoints, keeps those fully inside the
// band, takes the uppermost pixel per column climbed to the stroke's top
// edge, bridges gaps with Bresenham lines and extends flat to the borders.
MatraPath extract_matra(const BinaryImage& bin, const Skeleton& skel, int row,
                        StrokeWidth s_w);

struct ZoneModifier {
  Component comp;
  int col0 = 0;
  int col1 = 0;  // inclusive column span
};

struct UpperSplit {
  BinaryImage upper;
  std::vector<ZoneModifier> mods;
};

// Ink strictly above the per-column path; path pixels stay in the middle.
UpperSplit split_upper(const BinaryImage& bin, const MatraPath& matra);

// Posterior map over modifier class labels for a candidate glyph. The
// label kRejectLabel marks the non-modifier class when present.
using ModifierScorer =
    std::function<std::map<std::string, double>(const BinaryImage&)>;
inline constexpr const char* kRejectLabel = "#";

struct LowerSplit {
  BinaryImage middle;
  BinaryImage lower;
  std::vector<ZoneModifier> mods;
};

// Lower-zone extraction on the word body (upper zone already removed):
// components wholly inside the lower half split off directly; touching
// candidates are traced from their lower skeleton end points to the first
// junction (through a loop when the junction sits on one), cut there and
// kept only when the scorer accepts them (top posterior > 0.6 or a margin
// over the runner-up > 0.3). A null scorer keeps touching candidates in
// the middle zone.
LowerSplit split_lower(const BinaryImage& body, const Skeleton& skel,
                       int matra_row, const ModifierScorer* scorer);

struct ZoneSplit {
  BinaryImage upper;
  BinaryImage middle;
  BinaryImage lower;
  std::vector<ZoneModifier> upper_mods;
  std::vector<ZoneModifier> lower_mods;
  MatraPath matra;
  MatraCandidates candidates;
  MatraBranch branch = MatraBranch::R1;
  int matra_row = 0;
  int stroke = 1;
  bool no_scorer = false;
};

// Full zone segmentation; never throws on odd geometry, it degrades and
// flags instead. The zone foregrounds partition the word foreground.
ZoneSplit split_zones(const BinaryImage& bin,
                      const ModifierScorer* scorer = nullptr);

}  // namespace zonerec
