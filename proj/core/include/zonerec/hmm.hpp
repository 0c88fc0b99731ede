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

#include <map>
#include <string>
#include <vector>

#include "zonerec/features.hpp"

namespace zonerec {

// Log-domain zero sentinel.
inline constexpr double kLogZero = -1e30;

// Diagonal-covariance Gaussian mixture attached to one HMM state.
struct GmmState {
  std::vector<double> weights;             // M, sums to 1
  std::vector<std::vector<double>> means;  // M x dim
  std::vector<std::vector<double>> vars;   // M x dim
};

// Strict left-to-right character model: per state only a self loop and a
// move to the next state (the last state's move is the exit).
struct CharacterHmm {
  std::string label;
  std::vector<GmmState> states;
  std::vector<double> self_prob;
  std::vector<double> next_prob;
};

struct TrainConfig {
  int states = 8;
  int mixtures = 32;      // grown by splitting 1 -> 2 -> 4 -> ...
  int iterations = 4;     // re-estimation passes per mixture stage
  int min_occurrences = 3;
  double variance_floor_scale = 1e-2;  // times the global variance
  double improvement_tol = 1e-4;
};

struct ModelSet {
  std::map<std::string, CharacterHmm> models;
  FeatureKind feature = FeatureKind::Phog;
  int dim = 0;
  FrameSpec frame_spec;
  TrainConfig config;
  std::vector<double> training_loglik;  // total log-likelihood per pass
};

// Character spans over the frame axis, half-open, a partition of [0, T).
struct Alignment {
  std::vector<std::pair<int, int>> spans;
};

struct Hypothesis {
  std::string word;  // middle-zone string
  double score = kLogZero;
};
using NBestList = std::vector<Hypothesis>;

// log b_j(x): log-sum-exp over the mixture of diagonal Gaussians.
double gmm_logpdf(const GmmState& state, const std::vector<float>& x);

// Forward log-likelihood of the frame sequence against the concatenated
// character chain; kLogZero when the sequence is shorter than the chain.
double sequence_loglik(const ModelSet& models,
                       const std::vector<std::string>& symbols,
                       const FrameSequence& frames);

// Best-path (Viterbi) log score over the same chain.
double viterbi_score(const ModelSet& models,
                     const std::vector<std::string>& symbols,
                     const FrameSequence& frames);

// Embedded Baum-Welch from a flat start over whole-word transcriptions.
// Transcriptions are middle-zone symbol sequences; every symbol must occur
// at least config.min_occurrences times.
ModelSet train_embedded(
    const std::vector<std::pair<FrameSequence, std::vector<std::string>>>&
        corpus,
    FeatureKind feature, const TrainConfig& config);

// Lexicon-constrained decoding: exact per-word Viterbi with a shared
// emission cache; ties break lexicographically.
Hypothesis decode_lexicon(const FrameSequence& frames, const ModelSet& models,
                          const std::vector<std::string>& middle_lexicon);

NBestList nbest(const FrameSequence& frames, const ModelSet& models,
                const std::vector<std::string>& middle_lexicon, int n);

// Viterbi forced alignment against a fixed transcription; spans cover
// [0, T) exactly. Throws InputError when T is infeasible.
Alignment forced_align(const FrameSequence& frames,
                       const std::vector<std::string>& symbols,
                       const ModelSet& models);

// log p(X|W) + log p(W); the evidence term is word-independent and dropped.
double rescore_log_posterior(double word_loglik, double log_prior);

// Versioned model container: text header plus little-endian binary block.
void save_model_set(const std::string& path, const ModelSet& models);
ModelSet load_model_set(const std::string& path);

}  // namespace zonerec
