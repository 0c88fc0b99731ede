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

#include <string>
#include <vector>

#include "zonerec/hmm.hpp"
#include "zonerec/lexicon.hpp"
#include "zonerec/reservoir.hpp"
#include "zonerec/svm.hpp"
#include "zonerec/zoning.hpp"

namespace zonerec {

// Per middle-zone character column spans, half-open [start_col, end_col).
struct CharBoundary {
  std::vector<std::pair<int, int>> spans;
  std::vector<bool> snapped;  // per internal boundary, spans.size()-1 flags
};

// Maps frame-domain alignment spans into image columns: boundary column =
// round((end_frame * step + win_width/2) / scale), clipped to the width.
// `scale` is the height-normalization factor (norm_height / image height).
CharBoundary frames_to_columns(const Alignment& alignment,
                               const FrameSpec& spec, double scale, int width);

// Moves each internal boundary to the column of the nearest reservoir
// deepest point when it lies within 1.5 * mean character width / 2; snaps
// that would reorder boundaries are rejected.
CharBoundary snap_boundaries(const CharBoundary& bounds,
                             const std::vector<Reservoir>& reservoirs,
                             StrokeWidth s_w);

struct LabeledModifier {
  std::string label;
  int col0 = 0;
  int col1 = 0;
};

// Zone-wise recognition results feeding the association step.
struct ZoneLabels {
  std::vector<std::string> middle;
  CharBoundary bounds;
  std::vector<LabeledModifier> upper;
  std::vector<LabeledModifier> lower;
};

struct AssociatedWord {
  std::vector<std::string> clusters;  // composed grapheme tokens
  std::vector<int> upper_binding;     // per modifier: middle index, -1 dropped
  std::vector<int> lower_binding;
  int displacement = 0;  // sum |binding - own index|
  int dropped = 0;
  int source_hyp = 0;
};

// Flexible association: every modifier binds to the character whose span
// holds its center column or a +-1 neighbor; each modifier is consumed once
// and each character takes at most one modifier per zone. All consistent
// assignments are produced, fewest-displacement first, capped.
std::vector<AssociatedWord> associate(const ZoneLabels& labels,
                                      const ZoneTable& table, int cap = 512);

// Unit-cost edit distance over symbol tokens.
int levenshtein(const std::vector<std::string>& a,
                const std::vector<std::string>& b);

struct RankedWord {
  std::string word;
  int distance = 0;
  double score = kLogZero;  // source hypothesis log-likelihood
  int source_hyp = 0;
};

// All lexicon entries ranked by (distance, higher score, word); one row per
// distinct word. Throws InputError when `candidates` is empty.
std::vector<RankedWord> rank_all(const std::vector<AssociatedWord>& candidates,
                                 const Lexicon& lexicon,
                                 const std::vector<double>& hyp_scores);
RankedWord rank_against_lexicon(const std::vector<AssociatedWord>& candidates,
                                const Lexicon& lexicon,
                                const std::vector<double>& hyp_scores);

// The full zone-fusion recognizer.
struct Recognizer {
  ModelSet hmm;
  SvmModel upper_svm;
  SvmModel lower_svm;
  ZoneTable table;
  Lexicon lexicon;
  FeatureKind feature = FeatureKind::Phog;
  FrameSpec frame_spec;
};

struct WordResult {
  std::vector<RankedWord> ranked;  // final fused ranking, best first
  NBestList middle_nbest;
  double skew_deg = 0.0;
  double slant_deg = 0.0;
  bool degenerate = false;  // empty/blank input, nothing recognized
  bool synthetic_matra = false;
  bool middle_only = false;  // zoning failed, middle decode only
  // diagnostics: the deskewed/deslanted word and its zone split
  BinaryImage corrected;
  ZoneSplit zones;
};

WordResult recognize_word(const RasterImage& gray, const Recognizer& rec,
                          int nbest_n);
WordResult recognize_word_binary(const BinaryImage& bin, const Recognizer& rec,
                                 int nbest_n);

struct DecompositionStats {
  long long combined = 0;  // X*Y + Y*Z
  long long zoned = 0;     // X + Y + Z
  double reduction = 0.0;  // 1 - zoned/combined
  bool undefined = false;  // combined == 0
};

DecompositionStats decomposition_stats(long long x, long long y, long long z);

}  // namespace zonerec
