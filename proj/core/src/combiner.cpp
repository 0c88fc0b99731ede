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

#include "zonerec/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "zonerec/preprocess.hpp"
#include "zonerec/utf8.hpp"

namespace zonerec {

CharBoundary frames_to_columns(const Alignment& alignment,
                               const FrameSpec& spec, double scale,
                               int width) {
  CharBoundary out;
  if (alignment.spans.empty()) return out;
  int prev_col = 0;
  for (size_t i = 0; i < alignment.spans.size(); ++i) {
    int col;
    if (i + 1 == alignment.spans.size()) {
      col = width;
    } else {
      const int end_frame = alignment.spans[i].second;
      const double norm_col =
          end_frame * spec.step + spec.win_width / 2.0;
      col = static_cast<int>(std::lround(norm_col / scale));
      col = std::clamp(col, prev_col, width);
    }
    out.spans.emplace_back(prev_col, col);
    prev_col = col;
  }
  out.snapped.assign(alignment.spans.size() > 0 ? alignment.spans.size() - 1
                                                : 0,
                     false);
  return out;
}

CharBoundary snap_boundaries(const CharBoundary& bounds,
                             const std::vector<Reservoir>& reservoirs,
                             StrokeWidth) {
  CharBoundary out = bounds;
  const int n = static_cast<int>(bounds.spans.size());
  if (n <= 1 || reservoirs.empty()) return out;

  std::vector<int> depth_cols;
  for (const Reservoir& r : reservoirs)
    for (Coord p : r.depth_points) depth_cols.push_back(p.col);
  if (depth_cols.empty()) return out;
  std::sort(depth_cols.begin(), depth_cols.end());

  const int width = bounds.spans.back().second - bounds.spans.front().first;
  const double mean_char = static_cast<double>(width) / n;
  const double radius = 1.5 * mean_char / 2.0;

  // internal boundaries, processed left to right
  std::vector<int> cuts(n - 1);
  for (int i = 0; i < n - 1; ++i) cuts[i] = bounds.spans[i].second;

  for (int i = 0; i < n - 1; ++i) {
    int best = -1;
    double best_dist = radius + 1e-9;
    for (int col : depth_cols) {
      const double d = std::abs(col - cuts[i]);
      if (d < best_dist || (d == best_dist && col < best)) {
        best_dist = d;
        best = col;
      }
    }
    if (best < 0) continue;
    const int left = i == 0 ? bounds.spans.front().first : cuts[i - 1];
    const int right = i + 2 <= n - 1 ? cuts[i + 1] : bounds.spans.back().second;
    if (best <= left || best >= right) continue;  // would reorder: rejected
    if (best != cuts[i]) {
      cuts[i] = best;
      out.snapped[i] = true;
    }
  }

  int prev = bounds.spans.front().first;
  for (int i = 0; i < n; ++i) {
    const int end = i < n - 1 ? cuts[i] : bounds.spans.back().second;
    out.spans[i] = {prev, end};
    prev = end;
  }
  return out;
}

namespace {

int span_index_for(const CharBoundary& bounds, int center) {
  const int n = static_cast<int>(bounds.spans.size());
  for (int i = 0; i < n; ++i)
    if (center >= bounds.spans[i].first && center < bounds.spans[i].second)
      return i;
  // nearest span by interval distance, ties to the left
  int best = 0;
  int best_dist = INT32_MAX;
  for (int i = 0; i < n; ++i) {
    const auto [lo, hi] = bounds.spans[i];
    int d = 0;
    if (center < lo) d = lo - center;
    else if (center >= hi) d = center - hi + 1;
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

std::string compose_cluster(const ZoneTable& table, const std::string& middle,
                            const std::string& upper,
                            const std::string& lower) {
  if (const ZoneTableEntry* e = table.find_decomposition(middle, upper, lower))
    return e->cluster;
  return middle + upper + lower;  // tableless fallback
}

struct ModifierSlot {
  std::string label;
  int own = 0;   // span index under the modifier's center
  bool is_upper = true;
};

}  // namespace

std::vector<AssociatedWord> associate(const ZoneLabels& labels,
                                      const ZoneTable& table, int cap) {
  const int n = static_cast<int>(labels.middle.size());
  std::vector<AssociatedWord> out;
  if (n == 0) return out;

  std::vector<ModifierSlot> mods;
  for (const auto& m : labels.upper)
    mods.push_back({m.label, span_index_for(labels.bounds, (m.col0 + m.col1) / 2),
                    true});
  for (const auto& m : labels.lower)
    mods.push_back({m.label, span_index_for(labels.bounds, (m.col0 + m.col1) / 2),
                    false});

  const int n_upper = static_cast<int>(labels.upper.size());
  std::vector<int> binding(mods.size(), -1);
  std::vector<std::uint8_t> upper_used(n, 0), lower_used(n, 0);

  std::vector<AssociatedWord> all;
  // The enumeration is tiny in practice; a hard node budget guards
  // pathological inputs before the candidate cap applies.
  long long budget = 200000;

  std::function<void(size_t)> dfs = [&](size_t k) {
    if (budget-- <= 0) return;
    if (k == mods.size()) {
      AssociatedWord w;
      w.upper_binding.assign(binding.begin(), binding.begin() + n_upper);
      w.lower_binding.assign(binding.begin() + n_upper, binding.end());
      std::vector<std::string> uppers(n), lowers(n);
      for (size_t m = 0; m < mods.size(); ++m) {
        if (binding[m] < 0) {
          ++w.dropped;
          continue;
        }
        w.displacement += std::abs(binding[m] - mods[m].own);
        (mods[m].is_upper ? uppers : lowers)[binding[m]] = mods[m].label;
      }
      for (int i = 0; i < n; ++i)
        w.clusters.push_back(
            compose_cluster(table, labels.middle[i], uppers[i], lowers[i]));
      all.push_back(std::move(w));
      return;
    }
    const ModifierSlot& mod = mods[k];
    auto& used = mod.is_upper ? upper_used : lower_used;
    bool placed = false;
    for (int delta : {0, -1, +1}) {
      const int idx = mod.own + delta;
      if (idx < 0 || idx >= n || used[idx]) continue;
      used[idx] = 1;
      binding[k] = idx;
      placed = true;
      dfs(k + 1);
      used[idx] = 0;
      binding[k] = -1;
    }
    if (!placed) {
      // no free slot in reach: the modifier goes unbound
      binding[k] = -1;
      dfs(k + 1);
    }
  };
  dfs(0);

  std::stable_sort(all.begin(), all.end(),
                   [](const AssociatedWord& a, const AssociatedWord& b) {
                     if (a.dropped != b.dropped) return a.dropped < b.dropped;
                     if (a.displacement != b.displacement)
                       return a.displacement < b.displacement;
                     return a.clusters < b.clusters;
                   });
  if (static_cast<int>(all.size()) > cap) all.resize(cap);
  return all;
}

int levenshtein(const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
  const size_t n = b.size();
  std::vector<int> row(n + 1);
  for (size_t j = 0; j <= n; ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= n; ++j) {
      const int subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({subst, row[j] + 1, row[j - 1] + 1});
    }
  }
  return row[n];
}

std::vector<RankedWord> rank_all(const std::vector<AssociatedWord>& candidates,
                                 const Lexicon& lexicon,
                                 const std::vector<double>& hyp_scores) {
  if (candidates.empty())
    throw InputError("rank_against_lexicon: no candidates");
  if (lexicon.entries.empty())
    throw InputError("rank_against_lexicon: empty lexicon");

  std::map<std::string, RankedWord> best;
  for (const AssociatedWord& cand : candidates) {
    const double score = cand.source_hyp >= 0 &&
                                 cand.source_hyp <
                                     static_cast<int>(hyp_scores.size())
                             ? hyp_scores[cand.source_hyp]
                             : kLogZero;
    for (const LexiconEntry& entry : lexicon.entries) {
      const int d = levenshtein(cand.clusters, entry.clusters);
      auto [it, fresh] = best.try_emplace(entry.full);
      RankedWord& r = it->second;
      if (fresh || d < r.distance || (d == r.distance && score > r.score)) {
        r.word = entry.full;
        r.distance = d;
        r.score = score;
        r.source_hyp = cand.source_hyp;
      }
    }
  }
  std::vector<RankedWord> out;
  out.reserve(best.size());
  for (auto& [word, r] : best) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), [](const RankedWord& a, const RankedWord& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  return out;
}

RankedWord rank_against_lexicon(const std::vector<AssociatedWord>& candidates,
                                const Lexicon& lexicon,
                                const std::vector<double>& hyp_scores) {
  return rank_all(candidates, lexicon, hyp_scores).front();
}

namespace {

std::string top_modifier_label(const SvmModel& svm, const BinaryImage& crop) {
  if (!svm.trained()) return "";
  const auto post = predict_proba(svm, crop);
  std::string best;
  double best_p = -1.0;
  for (const auto& [label, p] : post)
    if (p > best_p) {
      best_p = p;
      best = label;
    }
  return best;
}

BinaryImage crop_component(const Component& comp) {
  BinaryImage out(comp.bbox.width(), comp.bbox.height(), false);
  for (Coord p : comp.pixels)
    out.set(p.row - comp.bbox.row0, p.col - comp.bbox.col0, true);
  return out;
}

}  // namespace

WordResult recognize_word_binary(const BinaryImage& bin, const Recognizer& rec,
                                 int nbest_n) {
  WordResult result;
  if (nbest_n < 1) throw InputError("recognize_word: nbest must be >= 1");
  if (rec.hmm.models.empty()) throw ModelError("recognize_word: no HMM set");
  if (rec.lexicon.entries.empty())
    throw ModelError("recognize_word: empty lexicon");
  if (bin.foreground_count() == 0) {
    result.degenerate = true;
    return result;
  }

  // skew, then slant
  const SkewEstimate skew = estimate_skew(bin);
  result.skew_deg = skew.theta_deg;
  BinaryImage upright = correct_skew(bin, skew.theta_deg);
  const SlantEstimate slant = estimate_slant(upright);
  result.slant_deg = slant.phi_deg;
  upright = correct_slant(upright, slant.phi_deg);

  // zones
  ModifierScorer scorer = [&](const BinaryImage& crop) {
    return rec.lower_svm.trained() ? predict_proba(rec.lower_svm, crop)
                                   : std::map<std::string, double>{};
  };
  const ModifierScorer* scorer_ptr = rec.lower_svm.trained() ? &scorer : nullptr;
  ZoneSplit zones = split_zones(upright, scorer_ptr);
  result.synthetic_matra = zones.matra.synthetic;
  result.corrected = upright;

  const BBox middle_box = zones.middle.foreground_bbox();
  if (middle_box.empty()) {
    result.degenerate = true;
    return result;
  }
  const BinaryImage middle_crop = crop(zones.middle, middle_box);

  // middle-zone decoding
  const FrameSequence frames = extract(middle_crop, rec.feature, rec.frame_spec);
  result.middle_nbest =
      nbest(frames, rec.hmm, rec.lexicon.middle_projection, nbest_n);
  if (result.middle_nbest.empty()) {
    result.degenerate = true;
    return result;
  }

  // modifiers labeled once, shared across hypotheses
  std::vector<LabeledModifier> upper_mods, lower_mods;
  if (rec.upper_svm.trained()) {
    for (const ZoneModifier& m : zones.upper_mods) {
      const std::string label =
          top_modifier_label(rec.upper_svm, crop_component(m.comp));
      if (!label.empty() && label != kRejectLabel)
        upper_mods.push_back({label, m.col0, m.col1});
    }
  }
  if (rec.lower_svm.trained()) {
    for (const ZoneModifier& m : zones.lower_mods) {
      const std::string label =
          top_modifier_label(rec.lower_svm, crop_component(m.comp));
      if (!label.empty() && label != kRejectLabel)
        lower_mods.push_back({label, m.col0, m.col1});
    }
  }
  result.middle_only = !rec.upper_svm.trained() && !rec.lower_svm.trained();

  // snap targets: inter-character valleys of the middle zone, found by the
  // water fill on the flipped crop (cavities that open downward in the
  // original orientation), expressed in word coordinates
  std::vector<Reservoir> snap_res;
  {
    StrokeWidth sw{zones.stroke};
    for (Reservoir& r : filter_reservoirs(
             bottom_reservoirs(flip_vertical(middle_crop)), sw)) {
      for (Coord& p : r.pixels) {
        p.row = middle_crop.height - 1 - p.row;
        p.col += middle_box.col0;
      }
      for (Coord& p : r.depth_points) {
        p.row = middle_crop.height - 1 - p.row;
        p.col += middle_box.col0;
      }
      snap_res.push_back(std::move(r));
    }
  }

  const double scale =
      static_cast<double>(rec.frame_spec.norm_height) / middle_crop.height;

  std::vector<AssociatedWord> candidates;
  std::vector<double> hyp_scores;
  for (size_t h = 0; h < result.middle_nbest.size(); ++h) {
    const Hypothesis& hyp = result.middle_nbest[h];
    hyp_scores.push_back(hyp.score);
    const std::vector<std::string> symbols = split_symbols(hyp.word);
    Alignment alignment;
    try {
      alignment = forced_align(frames, symbols, rec.hmm);
    } catch (const InputError&) {
      continue;  // hypothesis longer than the frame count
    }
    CharBoundary bounds =
        frames_to_columns(alignment, rec.frame_spec, scale, middle_crop.width);
    // shift into word coordinates, then snap toward the valley points
    for (auto& [lo, hi] : bounds.spans) {
      lo += middle_box.col0;
      hi += middle_box.col0;
    }
    bounds = snap_boundaries(bounds, snap_res, StrokeWidth{zones.stroke});

    ZoneLabels labels;
    labels.middle = symbols;
    labels.bounds = bounds;
    labels.upper = upper_mods;
    labels.lower = lower_mods;
    for (AssociatedWord& w : associate(labels, rec.table)) {
      w.source_hyp = static_cast<int>(h);
      candidates.push_back(std::move(w));
    }
  }

  if (candidates.empty()) {
    // middle-only degradation: every hypothesis maps through its cluster
    // sequence with no modifiers
    for (size_t h = 0; h < result.middle_nbest.size(); ++h) {
      AssociatedWord w;
      for (const std::string& sym :
           split_symbols(result.middle_nbest[h].word))
        w.clusters.push_back(compose_cluster(rec.table, sym, "", ""));
      w.source_hyp = static_cast<int>(h);
      candidates.push_back(std::move(w));
    }
    result.middle_only = true;
  }

  result.ranked = rank_all(candidates, rec.lexicon, hyp_scores);
  if (static_cast<int>(result.ranked.size()) > nbest_n)
    result.ranked.resize(nbest_n);
  result.zones = std::move(zones);
  return result;
}

WordResult recognize_word(const RasterImage& gray, const Recognizer& rec,
                          int nbest_n) {
  const OtsuResult otsu = otsu_binarize(gray);
  if (otsu.degenerate) {
    WordResult result;
    result.degenerate = true;
    return result;
  }
  return recognize_word_binary(otsu.image, rec, nbest_n);
}

DecompositionStats decomposition_stats(long long x, long long y, long long z) {
  if (x < 0 || y < 0 || z < 0)
    throw InputError("decomposition_stats: counts must be non-negative");
  DecompositionStats s;
  s.combined = x * y + y * z;
  s.zoned = x + y + z;
  if (s.combined == 0) {
    s.undefined = true;
    s.reduction = 0.0;
  } else {
    s.reduction = 1.0 - static_cast<double>(s.zoned) /
                            static_cast<double>(s.combined);
  }
  return s;
}

}  // namespace zonerec
