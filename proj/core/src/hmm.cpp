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

#include "zonerec/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "zonerec/parallel.hpp"
#include "zonerec/utf8.hpp"

namespace zonerec {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double logaddexp(double a, double b) {
  if (a <= kLogZero) return b;
  if (b <= kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double safe_log(double p) { return p > 0.0 ? std::log(p) : kLogZero; }

// Per-state precomputation so the inner loops avoid log() calls.
struct CompiledGmm {
  int mix = 0;
  int dim = 0;
  std::vector<double> gconst;   // log w_k - 0.5 * sum log(2 pi var)
  std::vector<double> inv_var;  // M x dim, flattened
  std::vector<double> mean;     // M x dim, flattened

  void build(const GmmState& s) {
    mix = static_cast<int>(s.weights.size());
    dim = mix > 0 ? static_cast<int>(s.means[0].size()) : 0;
    gconst.assign(mix, kLogZero);
    inv_var.assign(static_cast<size_t>(mix) * dim, 0.0);
    mean.assign(static_cast<size_t>(mix) * dim, 0.0);
    for (int k = 0; k < mix; ++k) {
      double g = safe_log(s.weights[k]);
      for (int d = 0; d < dim; ++d) {
        const double v = s.vars[k][d];
        g -= 0.5 * (kLog2Pi + std::log(v));
        inv_var[static_cast<size_t>(k) * dim + d] = 1.0 / v;
        mean[static_cast<size_t>(k) * dim + d] = s.means[k][d];
      }
      if (s.weights[k] > 0.0) gconst[k] = g;
    }
  }

  // Per-mixture joint log densities (log w_k + log N_k); out has M slots.
  void mixture_logs(const float* x, double* out) const {
    for (int k = 0; k < mix; ++k) {
      if (gconst[k] <= kLogZero) {
        out[k] = kLogZero;
        continue;
      }
      const double* iv = &inv_var[static_cast<size_t>(k) * dim];
      const double* mu = &mean[static_cast<size_t>(k) * dim];
      double q = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double diff = x[d] - mu[d];
        q += diff * diff * iv[d];
      }
      out[k] = gconst[k] - 0.5 * q;
    }
  }

  double logpdf(const float* x, double* scratch) const {
    mixture_logs(x, scratch);
    double acc = kLogZero;
    for (int k = 0; k < mix; ++k) acc = logaddexp(acc, scratch[k]);
    return acc;
  }
};

struct CompiledChar {
  std::vector<CompiledGmm> states;
  std::vector<double> lself, lnext;
};

struct Compiled {
  std::map<std::string, CompiledChar> chars;
  int dim = 0;
  int max_mix = 1;

  explicit Compiled(const ModelSet& m) {
    dim = m.dim;
    for (const auto& [label, hmm] : m.models) {
      CompiledChar cc;
      cc.states.resize(hmm.states.size());
      for (size_t s = 0; s < hmm.states.size(); ++s) {
        cc.states[s].build(hmm.states[s]);
        max_mix = std::max(max_mix, cc.states[s].mix);
      }
      for (size_t s = 0; s < hmm.states.size(); ++s) {
        cc.lself.push_back(safe_log(hmm.self_prob[s]));
        cc.lnext.push_back(safe_log(hmm.next_prob[s]));
      }
      chars.emplace(label, std::move(cc));
    }
  }
};

// Concatenated left-to-right chain over a symbol sequence.
struct Chain {
  std::vector<const CompiledGmm*> gmm;
  std::vector<double> lself, lnext;
  std::vector<int> char_of;   // chain state -> symbol index
  std::vector<int> local_of;  // chain state -> state index inside its model
  int n_chars = 0;
};

Chain build_chain(const Compiled& compiled,
                  const std::vector<std::string>& symbols) {
  Chain chain;
  chain.n_chars = static_cast<int>(symbols.size());
  for (size_t ci = 0; ci < symbols.size(); ++ci) {
    const auto it = compiled.chars.find(symbols[ci]);
    if (it == compiled.chars.end())
      throw ModelError("no character model for symbol '" + symbols[ci] + "'");
    const CompiledChar& cc = it->second;
    for (size_t s = 0; s < cc.states.size(); ++s) {
      chain.gmm.push_back(&cc.states[s]);
      chain.lself.push_back(cc.lself[s]);
      chain.lnext.push_back(cc.lnext[s]);
      chain.char_of.push_back(static_cast<int>(ci));
      chain.local_of.push_back(static_cast<int>(s));
    }
  }
  return chain;
}

void check_frames(const Compiled& compiled, const FrameSequence& frames) {
  if (frames.dim != compiled.dim)
    throw ModelError("feature dimensionality mismatch: frames " +
                     std::to_string(frames.dim) + " vs model " +
                     std::to_string(compiled.dim));
}

// Emission matrix em[t*S + s] for one chain.
std::vector<double> emissions(const Chain& chain, const FrameSequence& frames,
                              int max_mix) {
  const int T = static_cast<int>(frames.frames.size());
  const int S = static_cast<int>(chain.gmm.size());
  std::vector<double> em(static_cast<size_t>(T) * S, kLogZero);
  std::vector<double> scratch(max_mix);
  for (int t = 0; t < T; ++t) {
    const float* x = frames.frames[t].data();
    for (int s = 0; s < S; ++s)
      em[static_cast<size_t>(t) * S + s] = chain.gmm[s]->logpdf(x, scratch.data());
  }
  return em;
}

double forward_ll(const Chain& chain, const std::vector<double>& em, int T) {
  const int S = static_cast<int>(chain.gmm.size());
  if (T < S || S == 0) return kLogZero;
  std::vector<double> prev(S, kLogZero), cur(S, kLogZero);
  prev[0] = em[0];
  for (int t = 1; t < T; ++t) {
    const int lo = std::max(0, S - (T - t));
    const int hi = std::min(t, S - 1);
    std::fill(cur.begin(), cur.end(), kLogZero);
    for (int s = lo; s <= hi; ++s) {
      double a = prev[s] <= kLogZero ? kLogZero : prev[s] + chain.lself[s];
      if (s > 0 && prev[s - 1] > kLogZero)
        a = logaddexp(a, prev[s - 1] + chain.lnext[s - 1]);
      cur[s] = a <= kLogZero ? kLogZero : a + em[static_cast<size_t>(t) * S + s];
    }
    std::swap(prev, cur);
  }
  return prev[S - 1] <= kLogZero ? kLogZero : prev[S - 1] + chain.lnext[S - 1];
}

struct ViterbiResult {
  double score = kLogZero;
  std::vector<int> path;  // state index per frame
};

ViterbiResult viterbi(const Chain& chain, const std::vector<double>& em, int T,
                      bool want_path) {
  ViterbiResult res;
  const int S = static_cast<int>(chain.gmm.size());
  if (T < S || S == 0) return res;
  std::vector<double> prev(S, kLogZero), cur(S, kLogZero);
  std::vector<std::int16_t> bp;
  if (want_path) bp.assign(static_cast<size_t>(T) * S, 0);
  prev[0] = em[0];
  for (int t = 1; t < T; ++t) {
    const int lo = std::max(0, S - (T - t));
    const int hi = std::min(t, S - 1);
    std::fill(cur.begin(), cur.end(), kLogZero);
    for (int s = lo; s <= hi; ++s) {
      double best = prev[s] <= kLogZero ? kLogZero : prev[s] + chain.lself[s];
      int from = s;
      if (s > 0 && prev[s - 1] > kLogZero) {
        const double alt = prev[s - 1] + chain.lnext[s - 1];
        if (alt > best) {
          best = alt;
          from = s - 1;
        }
      }
      if (best > kLogZero) {
        cur[s] = best + em[static_cast<size_t>(t) * S + s];
        if (want_path) bp[static_cast<size_t>(t) * S + s] = static_cast<std::int16_t>(from);
      }
    }
    std::swap(prev, cur);
  }
  if (prev[S - 1] <= kLogZero) return res;
  res.score = prev[S - 1] + chain.lnext[S - 1];
  if (want_path) {
    res.path.assign(T, 0);
    int s = S - 1;
    for (int t = T - 1; t >= 0; --t) {
      res.path[t] = s;
      if (t > 0) s = bp[static_cast<size_t>(t) * S + s];
    }
  }
  return res;
}

}  // namespace

double gmm_logpdf(const GmmState& state, const std::vector<float>& x) {
  if (state.means.empty() || state.means[0].size() != x.size())
    throw ModelError("gmm_logpdf: dimensionality mismatch");
  CompiledGmm c;
  c.build(state);
  std::vector<double> scratch(c.mix);
  return c.logpdf(x.data(), scratch.data());
}

double sequence_loglik(const ModelSet& models,
                       const std::vector<std::string>& symbols,
                       const FrameSequence& frames) {
  const Compiled compiled(models);
  check_frames(compiled, frames);
  const Chain chain = build_chain(compiled, symbols);
  const int T = static_cast<int>(frames.frames.size());
  if (T < static_cast<int>(chain.gmm.size())) return kLogZero;
  return forward_ll(chain, emissions(chain, frames, compiled.max_mix), T);
}

double viterbi_score(const ModelSet& models,
                     const std::vector<std::string>& symbols,
                     const FrameSequence& frames) {
  const Compiled compiled(models);
  check_frames(compiled, frames);
  const Chain chain = build_chain(compiled, symbols);
  const int T = static_cast<int>(frames.frames.size());
  if (T < static_cast<int>(chain.gmm.size())) return kLogZero;
  return viterbi(chain, emissions(chain, frames, compiled.max_mix), T, false)
      .score;
}

// ---- training ----

namespace {

struct StateAcc {
  std::vector<double> occ;                 // per mixture
  std::vector<std::vector<double>> sum_x;  // M x dim
  std::vector<std::vector<double>> sum_x2;
  double self = 0.0;
  double next = 0.0;

  void init(int mix, int dim) {
    occ.assign(mix, 0.0);
    sum_x.assign(mix, std::vector<double>(dim, 0.0));
    sum_x2.assign(mix, std::vector<double>(dim, 0.0));
    self = next = 0.0;
  }
  void merge(const StateAcc& o) {
    for (size_t k = 0; k < occ.size(); ++k) {
      occ[k] += o.occ[k];
      for (size_t d = 0; d < sum_x[k].size(); ++d) {
        sum_x[k][d] += o.sum_x[k][d];
        sum_x2[k][d] += o.sum_x2[k][d];
      }
    }
    self += o.self;
    next += o.next;
  }
};

struct EStepAcc {
  std::map<std::string, std::vector<StateAcc>> states;
  double total_ll = 0.0;
  int skipped = 0;

  void init(const ModelSet& m) {
    for (const auto& [label, hmm] : m.models) {
      auto& v = states[label];
      v.resize(hmm.states.size());
      for (size_t s = 0; s < hmm.states.size(); ++s)
        v[s].init(static_cast<int>(hmm.states[s].weights.size()), m.dim);
    }
  }
  void merge(const EStepAcc& o) {
    for (const auto& [label, v] : o.states) {
      auto& mine = states[label];
      for (size_t s = 0; s < v.size(); ++s) mine[s].merge(v[s]);
    }
    total_ll += o.total_ll;
    skipped += o.skipped;
  }
};

// Forward-backward accumulation for one word.
void accumulate_word(const Compiled& compiled,
                     const std::vector<std::string>& symbols,
                     const FrameSequence& frames, EStepAcc& acc) {
  const Chain chain = build_chain(compiled, symbols);
  const int T = static_cast<int>(frames.frames.size());
  const int S = static_cast<int>(chain.gmm.size());
  if (T < S || S == 0) {
    ++acc.skipped;
    return;
  }
  const std::vector<double> em = emissions(chain, frames, compiled.max_mix);

  std::vector<double> alpha(static_cast<size_t>(T) * S, kLogZero);
  std::vector<double> beta(static_cast<size_t>(T) * S, kLogZero);
  alpha[0] = em[0];
  for (int t = 1; t < T; ++t) {
    const int lo = std::max(0, S - (T - t));
    const int hi = std::min(t, S - 1);
    for (int s = lo; s <= hi; ++s) {
      double a = kLogZero;
      const double stay = alpha[static_cast<size_t>(t - 1) * S + s];
      if (stay > kLogZero) a = stay + chain.lself[s];
      if (s > 0) {
        const double moved = alpha[static_cast<size_t>(t - 1) * S + s - 1];
        if (moved > kLogZero)
          a = logaddexp(a, moved + chain.lnext[s - 1]);
      }
      if (a > kLogZero)
        alpha[static_cast<size_t>(t) * S + s] =
            a + em[static_cast<size_t>(t) * S + s];
    }
  }
  const double ll =
      alpha[static_cast<size_t>(T - 1) * S + S - 1] + chain.lnext[S - 1];
  if (!(ll > kLogZero)) {
    ++acc.skipped;
    return;
  }
  acc.total_ll += ll;

  beta[static_cast<size_t>(T - 1) * S + S - 1] = chain.lnext[S - 1];
  for (int t = T - 2; t >= 0; --t) {
    const int lo = std::max(0, S - (T - t));
    const int hi = std::min(t, S - 1);
    for (int s = lo; s <= hi; ++s) {
      double b = kLogZero;
      const double stay = beta[static_cast<size_t>(t + 1) * S + s];
      if (stay > kLogZero)
        b = chain.lself[s] + em[static_cast<size_t>(t + 1) * S + s] + stay;
      if (s + 1 < S) {
        const double moved = beta[static_cast<size_t>(t + 1) * S + s + 1];
        if (moved > kLogZero)
          b = logaddexp(b, chain.lnext[s] +
                               em[static_cast<size_t>(t + 1) * S + s + 1] +
                               moved);
      }
      beta[static_cast<size_t>(t) * S + s] = b;
    }
  }

  // chain state -> shared accumulator slot
  std::vector<StateAcc*> slot(S);
  for (int s = 0; s < S; ++s)
    slot[s] = &acc.states[symbols[chain.char_of[s]]][chain.local_of[s]];

  std::vector<double> mix_logs(compiled.max_mix);
  for (int t = 0; t < T; ++t) {
    const float* x = frames.frames[t].data();
    for (int s = 0; s < S; ++s) {
      const double a = alpha[static_cast<size_t>(t) * S + s];
      const double b = beta[static_cast<size_t>(t) * S + s];
      if (a <= kLogZero || b <= kLogZero) continue;
      const double lgamma = a + b - ll;
      if (lgamma < -30.0) continue;  // negligible occupancy
      const double gamma = std::exp(lgamma);

      StateAcc& sacc = *slot[s];

      const CompiledGmm& g = *chain.gmm[s];
      g.mixture_logs(x, mix_logs.data());
      const double total = em[static_cast<size_t>(t) * S + s];
      for (int k = 0; k < g.mix; ++k) {
        if (mix_logs[k] <= kLogZero) continue;
        const double r = gamma * std::exp(mix_logs[k] - total);
        if (r <= 0.0) continue;
        sacc.occ[k] += r;
        auto& sx = sacc.sum_x[k];
        auto& sx2 = sacc.sum_x2[k];
        for (int d = 0; d < g.dim; ++d) {
          const double v = x[d];
          sx[d] += r * v;
          sx2[d] += r * v * v;
        }
      }

      // transition posteriors out of (t, s)
      if (t + 1 < T) {
        const double bstay = beta[static_cast<size_t>(t + 1) * S + s];
        if (bstay > kLogZero) {
          const double xi = a + chain.lself[s] +
                            em[static_cast<size_t>(t + 1) * S + s] + bstay - ll;
          if (xi > -30.0) sacc.self += std::exp(xi);
        }
        if (s + 1 < S) {
          const double bmove = beta[static_cast<size_t>(t + 1) * S + s + 1];
          if (bmove > kLogZero) {
            const double xi = a + chain.lnext[s] +
                              em[static_cast<size_t>(t + 1) * S + s + 1] +
                              bmove - ll;
            if (xi > -30.0) sacc.next += std::exp(xi);
          }
        }
      } else if (s == S - 1) {
        sacc.next += std::exp(a + chain.lnext[s] - ll);
      }
    }
  }
}

void split_mixtures(ModelSet& models, int target) {
  for (auto& [label, hmm] : models.models) {
    for (GmmState& st : hmm.states) {
      int current = static_cast<int>(st.weights.size());
      while (current < target) {
        const int n_split = std::min(current, target - current);
        // heaviest mixtures first, ties to the lower index
        std::vector<int> order(current);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
          return st.weights[a] > st.weights[b];
        });
        for (int i = 0; i < n_split; ++i) {
          const int k = order[i];
          const int dim = static_cast<int>(st.means[k].size());
          std::vector<double> mean_hi(dim), mean_lo(dim);
          for (int d = 0; d < dim; ++d) {
            const double sigma = std::sqrt(st.vars[k][d]);
            mean_hi[d] = st.means[k][d] + 0.2 * sigma;
            mean_lo[d] = st.means[k][d] - 0.2 * sigma;
          }
          st.weights[k] *= 0.5;
          st.weights.push_back(st.weights[k]);
          st.means.push_back(std::move(mean_hi));
          st.means[k] = std::move(mean_lo);
          st.vars.push_back(st.vars[k]);
        }
        current = static_cast<int>(st.weights.size());
      }
    }
  }
}

}  // namespace

ModelSet train_embedded(
    const std::vector<std::pair<FrameSequence, std::vector<std::string>>>&
        corpus,
    FeatureKind feature, const TrainConfig& config) {
  if (corpus.empty()) throw InputError("train_embedded: empty corpus");
  const int dim = corpus.front().first.dim;

  // occurrence check
  std::map<std::string, int> occurrences;
  for (const auto& [frames, symbols] : corpus) {
    if (frames.dim != dim)
      throw InputError("train_embedded: inconsistent frame dimensionality");
    for (const auto& s : symbols) ++occurrences[s];
  }
  std::string missing;
  for (const auto& [sym, n] : occurrences)
    if (n < config.min_occurrences) missing += (missing.empty() ? "" : ", ") + sym;
  if (!missing.empty())
    throw InputError("train_embedded: symbols below " +
                     std::to_string(config.min_occurrences) +
                     " occurrences: " + missing);

  // flat start from global statistics
  std::vector<double> gmean(dim, 0.0), gvar(dim, 0.0);
  std::int64_t n_frames = 0;
  for (const auto& [frames, symbols] : corpus)
    for (const auto& f : frames.frames) {
      for (int d = 0; d < dim; ++d) gmean[d] += f[d];
      ++n_frames;
    }
  for (double& v : gmean) v /= static_cast<double>(n_frames);
  for (const auto& [frames, symbols] : corpus)
    for (const auto& f : frames.frames)
      for (int d = 0; d < dim; ++d) {
        const double diff = f[d] - gmean[d];
        gvar[d] += diff * diff;
      }
  for (double& v : gvar) {
    v /= static_cast<double>(n_frames);
    if (v < 1e-8) v = 1e-8;
  }
  std::vector<double> floor(dim);
  for (int d = 0; d < dim; ++d)
    floor[d] = std::max(1e-10, config.variance_floor_scale * gvar[d]);

  ModelSet models;
  models.feature = feature;
  models.dim = dim;
  models.frame_spec = corpus.front().first.spec;
  models.config = config;
  for (const auto& [sym, n] : occurrences) {
    CharacterHmm hmm;
    hmm.label = sym;
    hmm.states.assign(config.states, GmmState{{1.0}, {gmean}, {gvar}});
    hmm.self_prob.assign(config.states, 0.5);
    hmm.next_prob.assign(config.states, 0.5);
    models.models.emplace(sym, std::move(hmm));
  }

  const int n_words = static_cast<int>(corpus.size());
  int current_mix = 1;
  while (true) {
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < config.iterations; ++iter) {
      const Compiled compiled(models);
      std::vector<EStepAcc> chunk_acc(kParallelChunks);
      run_chunks(n_words, [&](int chunk, int begin, int end) {
        EStepAcc& acc = chunk_acc[chunk];
        acc.init(models);
        for (int i = begin; i < end; ++i)
          accumulate_word(compiled, corpus[i].second, corpus[i].first, acc);
      });
      EStepAcc acc;
      acc.init(models);
      for (const EStepAcc& c : chunk_acc)
        if (!c.states.empty()) acc.merge(c);

      // M-step
      for (auto& [label, hmm] : models.models) {
        const auto& accs = acc.states[label];
        for (size_t s = 0; s < hmm.states.size(); ++s) {
          GmmState& st = hmm.states[s];
          const StateAcc& sa = accs[s];
          const double occ_total =
              std::accumulate(sa.occ.begin(), sa.occ.end(), 0.0);
          if (occ_total > 1e-8) {
            for (size_t k = 0; k < st.weights.size(); ++k) {
              if (sa.occ[k] > 1e-8) {
                st.weights[k] = sa.occ[k] / occ_total;
                for (int d = 0; d < dim; ++d) {
                  const double mu = sa.sum_x[k][d] / sa.occ[k];
                  double var = sa.sum_x2[k][d] / sa.occ[k] - mu * mu;
                  if (var < floor[d]) var = floor[d];
                  st.means[k][d] = mu;
                  st.vars[k][d] = var;
                }
              } else {
                st.weights[k] = 0.0;
              }
            }
          }
          const double trans_total = sa.self + sa.next;
          if (trans_total > 1e-8) {
            hmm.self_prob[s] = sa.self / trans_total;
            hmm.next_prob[s] = sa.next / trans_total;
          }
        }
      }

      models.training_loglik.push_back(acc.total_ll);
      if (iter > 0 && acc.total_ll - prev_ll < config.improvement_tol) {
        prev_ll = acc.total_ll;
        break;
      }
      prev_ll = acc.total_ll;
    }
    if (current_mix >= config.mixtures) break;
    split_mixtures(models, std::min(config.mixtures, current_mix * 2));
    current_mix = std::min(config.mixtures, current_mix * 2);
  }
  return models;
}

// ---- decoding ----

namespace {

std::vector<Hypothesis> score_lexicon(const FrameSequence& frames,
                                      const ModelSet& models,
                                      const std::vector<std::string>& lexicon) {
  const Compiled compiled(models);
  check_frames(compiled, frames);
  const int T = static_cast<int>(frames.frames.size());

  // Shared per-frame emission cache over every distinct model state.
  std::map<std::string, std::vector<std::vector<double>>> cache;
  for (const auto& [label, cc] : compiled.chars) {
    auto& rows = cache[label];
    rows.assign(cc.states.size(), std::vector<double>(T, kLogZero));
    std::vector<double> scratch(compiled.max_mix);
    for (size_t s = 0; s < cc.states.size(); ++s)
      for (int t = 0; t < T; ++t)
        rows[s][t] =
            cc.states[s].logpdf(frames.frames[t].data(), scratch.data());
  }

  std::vector<Hypothesis> out;
  out.reserve(lexicon.size());
  for (const std::string& word : lexicon) {
    const std::vector<std::string> symbols = split_symbols(word);
    Chain chain = build_chain(compiled, symbols);
    const int S = static_cast<int>(chain.gmm.size());
    Hypothesis hyp{word, kLogZero};
    if (T >= S && S > 0) {
      // assemble emissions from the cache
      std::vector<double> em(static_cast<size_t>(T) * S);
      int s0 = 0;
      for (const auto& sym : symbols) {
        const auto& rows = cache[sym];
        for (size_t s = 0; s < rows.size(); ++s)
          for (int t = 0; t < T; ++t)
            em[static_cast<size_t>(t) * S + s0 + s] = rows[s][t];
        s0 += static_cast<int>(rows.size());
      }
      hyp.score = viterbi(chain, em, T, false).score;
    }
    out.push_back(std::move(hyp));
  }
  return out;
}

}  // namespace

Hypothesis decode_lexicon(const FrameSequence& frames, const ModelSet& models,
                          const std::vector<std::string>& middle_lexicon) {
  if (middle_lexicon.empty())
    throw InputError("decode_lexicon: empty lexicon");
  const NBestList list = nbest(frames, models, middle_lexicon, 1);
  return list.front();
}

NBestList nbest(const FrameSequence& frames, const ModelSet& models,
                const std::vector<std::string>& middle_lexicon, int n) {
  if (middle_lexicon.empty()) return {};
  if (n < 1) throw InputError("nbest: n must be >= 1");
  std::vector<Hypothesis> scored = score_lexicon(frames, models, middle_lexicon);
  std::sort(scored.begin(), scored.end(),
            [](const Hypothesis& a, const Hypothesis& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.word < b.word;
            });
  // distinct strings only
  NBestList out;
  for (const Hypothesis& h : scored) {
    if (!out.empty() && out.back().word == h.word) continue;
    bool dup = false;
    for (const Hypothesis& o : out)
      if (o.word == h.word) {
        dup = true;
        break;
      }
    if (dup) continue;
    out.push_back(h);
    if (static_cast<int>(out.size()) == n) break;
  }
  return out;
}

Alignment forced_align(const FrameSequence& frames,
                       const std::vector<std::string>& symbols,
                       const ModelSet& models) {
  const Compiled compiled(models);
  check_frames(compiled, frames);
  const Chain chain = build_chain(compiled, symbols);
  const int T = static_cast<int>(frames.frames.size());
  const int S = static_cast<int>(chain.gmm.size());
  if (T < S)
    throw InputError("forced_align: sequence shorter than the state chain");
  const ViterbiResult res =
      viterbi(chain, emissions(chain, frames, compiled.max_mix), T, true);
  if (res.path.empty())
    throw InputError("forced_align: no feasible alignment path");

  Alignment out;
  int start = 0;
  for (int t = 1; t <= T; ++t) {
    if (t == T || chain.char_of[res.path[t]] != chain.char_of[res.path[t - 1]]) {
      out.spans.emplace_back(start, t);
      start = t;
    }
  }
  return out;
}

double rescore_log_posterior(double word_loglik, double log_prior) {
  return word_loglik + log_prior;
}

// ---- serialization ----

namespace {

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (bits >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void save_model_set(const std::string& path, const ModelSet& models) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << "ZONEREC HMM 1\n";
  out << "feature " << feature_kind_name(models.feature) << "\n";
  out << "dim " << models.dim << "\n";
  out << "norm_height " << models.frame_spec.norm_height << "\n";
  out << "win_width " << models.frame_spec.win_width << "\n";
  out << "step " << models.frame_spec.step << "\n";
  out << "states " << models.config.states << "\n";
  out << "mixtures " << models.config.mixtures << "\n";
  out << "iterations " << models.config.iterations << "\n";
  out << "min_occurrences " << models.config.min_occurrences << "\n";
  out << "variance_floor_scale " << models.config.variance_floor_scale << "\n";
  out << "improvement_tol " << models.config.improvement_tol << "\n";
  out << "labels " << models.models.size() << "\n";
  for (const auto& [label, hmm] : models.models) {
    out << "label " << label << " " << hmm.states.size();
    for (const GmmState& st : hmm.states) out << " " << st.weights.size();
    out << "\n";
  }
  out << "BINARY\n";
  for (const auto& [label, hmm] : models.models) {
    for (size_t s = 0; s < hmm.states.size(); ++s) {
      const GmmState& st = hmm.states[s];
      for (double w : st.weights) put_f64(out, w);
      for (const auto& m : st.means)
        for (double v : m) put_f64(out, v);
      for (const auto& vv : st.vars)
        for (double v : vv) put_f64(out, v);
      put_f64(out, hmm.self_prob[s]);
      put_f64(out, hmm.next_prob[s]);
    }
  }
  if (!out) throw InputError("write failed: " + path);
}

ModelSet load_model_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file " + path);
  std::string line;
  if (!std::getline(in, line) || line != "ZONEREC HMM 1")
    throw ModelError(path + ": not a model file (bad magic)");

  ModelSet models;
  std::vector<std::pair<std::string, std::vector<int>>> layout;
  int n_labels = 0;
  while (std::getline(in, line)) {
    if (line == "BINARY") break;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "feature") {
      std::string name;
      ss >> name;
      models.feature = feature_kind_from_name(name);
    } else if (key == "dim") ss >> models.dim;
    else if (key == "norm_height") ss >> models.frame_spec.norm_height;
    else if (key == "win_width") ss >> models.frame_spec.win_width;
    else if (key == "step") ss >> models.frame_spec.step;
    else if (key == "states") ss >> models.config.states;
    else if (key == "mixtures") ss >> models.config.mixtures;
    else if (key == "iterations") ss >> models.config.iterations;
    else if (key == "min_occurrences") ss >> models.config.min_occurrences;
    else if (key == "variance_floor_scale")
      ss >> models.config.variance_floor_scale;
    else if (key == "improvement_tol") ss >> models.config.improvement_tol;
    else if (key == "labels") ss >> n_labels;
    else if (key == "label") {
      std::string label;
      int n_states = 0;
      ss >> label >> n_states;
      std::vector<int> mixes(n_states, 0);
      for (int& m : mixes) ss >> m;
      if (!ss || label.empty())
        throw ModelError(path + ": malformed label line");
      layout.emplace_back(label, std::move(mixes));
    } else {
      throw ModelError(path + ": unknown header field '" + key + "'");
    }
  }
  if (static_cast<int>(layout.size()) != n_labels)
    throw ModelError(path + ": label count mismatch");
  if (models.dim <= 0) throw ModelError(path + ": missing dimensionality");

  for (const auto& [label, mixes] : layout) {
    CharacterHmm hmm;
    hmm.label = label;
    for (int m : mixes) {
      GmmState st;
      st.weights.assign(m, 0.0);
      st.means.assign(m, std::vector<double>(models.dim, 0.0));
      st.vars.assign(m, std::vector<double>(models.dim, 0.0));
      hmm.states.push_back(std::move(st));
    }
    hmm.self_prob.assign(mixes.size(), 0.0);
    hmm.next_prob.assign(mixes.size(), 0.0);
    for (size_t s = 0; s < hmm.states.size(); ++s) {
      GmmState& st = hmm.states[s];
      for (double& w : st.weights) w = get_f64(in);
      for (auto& mm : st.means)
        for (double& v : mm) v = get_f64(in);
      for (auto& vv : st.vars)
        for (double& v : vv) v = get_f64(in);
      hmm.self_prob[s] = get_f64(in);
      hmm.next_prob[s] = get_f64(in);
    }
    models.models.emplace(label, std::move(hmm));
  }
  if (!in) throw ModelError(path + ": truncated parameter block");
  return models;
}

}  // namespace zonerec
