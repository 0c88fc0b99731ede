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
#include <cstdio>
#include <numeric>

#include "doctest.h"
#include "test_support.hpp"
#include "zonerec/hmm.hpp"
#include "zonerec/utf8.hpp"

using namespace zonerec;
using namespace zonerec::test;

namespace {

GmmState make_state(std::vector<double> weights,
                    std::vector<std::vector<double>> means,
                    std::vector<std::vector<double>> vars) {
  return GmmState{std::move(weights), std::move(means), std::move(vars)};
}

// Hand-built model set over 1-D frames.
ModelSet tiny_models(double mu_u0, double mu_u1, double mu_v0, double mu_v1,
                     double var = 1.0, double self = 0.5) {
  ModelSet m;
  m.dim = 1;
  CharacterHmm u;
  u.label = "u";
  u.states = {make_state({1.0}, {{mu_u0}}, {{var}}),
              make_state({1.0}, {{mu_u1}}, {{var}})};
  u.self_prob = {self, self};
  u.next_prob = {1 - self, 1 - self};
  CharacterHmm v = u;
  v.label = "v";
  v.states = {make_state({1.0}, {{mu_v0}}, {{var}}),
              make_state({1.0}, {{mu_v1}}, {{var}})};
  m.models.emplace("u", std::move(u));
  m.models.emplace("v", std::move(v));
  return m;
}

FrameSequence frames_from(const std::vector<std::vector<float>>& rows) {
  FrameSequence seq;
  seq.frames = rows;
  seq.dim = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  return seq;
}

double diag_gauss_logpdf(const std::vector<double>& mu,
                         const std::vector<double>& var,
                         const std::vector<float>& x) {
  double acc = 0.0;
  for (size_t d = 0; d < mu.size(); ++d) {
    const double diff = x[d] - mu[d];
    acc += -0.5 * (std::log(2.0 * M_PI * var[d]) + diff * diff / var[d]);
  }
  return acc;
}

// Exhaustive path enumeration oracle for left-to-right chains.
struct ChainSpec {
  std::vector<const GmmState*> gmm;
  std::vector<double> self, next;
};

ChainSpec oracle_chain(const ModelSet& m,
                       const std::vector<std::string>& symbols) {
  ChainSpec c;
  for (const auto& sym : symbols) {
    const CharacterHmm& hmm = m.models.at(sym);
    for (size_t s = 0; s < hmm.states.size(); ++s) {
      c.gmm.push_back(&hmm.states[s]);
      c.self.push_back(hmm.self_prob[s]);
      c.next.push_back(hmm.next_prob[s]);
    }
  }
  return c;
}

void enumerate_paths(const ChainSpec& c, const FrameSequence& frames,
                     double& forward_ll, double& viterbi_ll) {
  const int T = static_cast<int>(frames.frames.size());
  const int S = static_cast<int>(c.gmm.size());
  double total = 0.0, best = -1;
  std::vector<int> path(T, 0);
  // enumerate monotone paths starting at 0 ending at S-1, steps of 0/+1
  const int moves = S - 1;
  // choose which of the T-1 transitions are moves: iterate bitmasks
  std::vector<int> idx(T - 1);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<bool> move(T - 1, false);
  // recursive combination enumeration
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (left == 0) {
      // build path
      int s = 0;
      double p = 1.0;
      p *= std::exp(gmm_logpdf(*c.gmm[0], frames.frames[0]));
      for (int t = 1; t < T; ++t) {
        if (move[t - 1]) {
          p *= c.next[s];
          s += 1;
        } else {
          p *= c.self[s];
        }
        p *= std::exp(gmm_logpdf(*c.gmm[s], frames.frames[t]));
      }
      if (s == S - 1) {
        p *= c.next[S - 1];  // exit
        total += p;
        best = std::max(best, p);
      }
      return;
    }
    if (pos >= T - 1) return;
    move[pos] = true;
    rec(pos + 1, left - 1);
    move[pos] = false;
    rec(pos + 1, left);
  };
  if (S <= T) rec(0, moves);
  forward_ll = total > 0 ? std::log(total) : kLogZero;
  viterbi_ll = best > 0 ? std::log(best) : kLogZero;
}

}  // namespace

TEST_CASE("gmm log-density closed forms and the naive-sum oracle") {
  // one mixture centered on x with unit variance: -(d/2) log(2 pi)
  const int d = 4;
  GmmState st = make_state({1.0}, {std::vector<double>(d, 0.7)},
                           {std::vector<double>(d, 1.0)});
  const std::vector<float> x(d, 0.7f);
  CHECK(gmm_logpdf(st, x) ==
        doctest::Approx(-0.5 * d * std::log(2.0 * M_PI)).epsilon(1e-12));

  // two equal mixtures symmetric about x: log of the average density
  GmmState sym = make_state({0.5, 0.5}, {{-1.0}, {3.0}}, {{1.0}, {1.0}});
  const std::vector<float> mid{1.0f};
  const double single = diag_gauss_logpdf({-1.0}, {1.0}, mid);
  CHECK(gmm_logpdf(sym, mid) == doctest::Approx(single).epsilon(1e-12));

  // random 3-mixture state matches direct summation within 1e-10
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 3;
    std::vector<double> w{0.2, 0.5, 0.3};
    std::vector<std::vector<double>> means, vars;
    for (int k = 0; k < 3; ++k) {
      std::vector<double> mu(dim), var(dim);
      for (int j = 0; j < dim; ++j) {
        mu[j] = rng.uniform(-2, 2);
        var[j] = rng.uniform(0.2, 3.0);
      }
      means.push_back(mu);
      vars.push_back(var);
    }
    GmmState g = make_state(w, means, vars);
    std::vector<float> xx(dim);
    for (auto& v : xx) v = static_cast<float>(rng.uniform(-3, 3));
    double direct = 0.0;
    for (int k = 0; k < 3; ++k)
      direct += w[k] * std::exp(diag_gauss_logpdf(means[k], vars[k], xx));
    CHECK(std::abs(gmm_logpdf(g, xx) - std::log(direct)) < 1e-10);
  }

  CHECK_THROWS_AS(gmm_logpdf(st, std::vector<float>{1.f}), ModelError);
}

TEST_CASE("single-state chain collapses to a closed form") {
  ModelSet m;
  m.dim = 1;
  CharacterHmm a;
  a.label = "a";
  a.states = {make_state({1.0}, {{0.0}}, {{1.0}})};
  a.self_prob = {0.7};
  a.next_prob = {0.3};
  m.models.emplace("a", std::move(a));

  Rng rng(7);
  const int T = 6;
  std::vector<std::vector<float>> rows;
  for (int t = 0; t < T; ++t)
    rows.push_back({static_cast<float>(rng.gauss())});
  const FrameSequence seq = frames_from(rows);

  double expect = (T - 1) * std::log(0.7) + std::log(0.3);
  for (const auto& f : rows) expect += diag_gauss_logpdf({0.0}, {1.0}, f);
  CHECK(sequence_loglik(m, {"a"}, seq) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(viterbi_score(m, {"a"}, seq) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("forward and viterbi equal exhaustive enumeration") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double self = rng.uniform(0.2, 0.8);
    ModelSet m = tiny_models(rng.uniform(-2, 0), rng.uniform(0, 2),
                             rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(0.5, 2.0), self);
    // chains of 1..3 total states: "u" has 2 states; also test single char
    const std::vector<std::string> symbols =
        trial % 2 == 0 ? std::vector<std::string>{"u"}
                       : std::vector<std::string>{"v"};
    const int T = rng.uniform_int(2, 6);
    std::vector<std::vector<float>> rows;
    for (int t = 0; t < T; ++t)
      rows.push_back({static_cast<float>(rng.uniform(-2, 2))});
    const FrameSequence seq = frames_from(rows);

    double fwd_oracle, vit_oracle;
    enumerate_paths(oracle_chain(m, symbols), seq, fwd_oracle, vit_oracle);
    const double fwd = sequence_loglik(m, symbols, seq);
    const double vit = viterbi_score(m, symbols, seq);
    CHECK(std::abs(fwd - fwd_oracle) < 1e-9);
    CHECK(std::abs(vit - vit_oracle) < 1e-9);
    CHECK(fwd >= vit - 1e-12);
  }
}

TEST_CASE("three-state chains also match enumeration") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    ModelSet m;
    m.dim = 1;
    CharacterHmm w;
    w.label = "w";
    for (int s = 0; s < 3; ++s) {
      w.states.push_back(make_state({1.0}, {{rng.uniform(-2, 2)}},
                                    {{rng.uniform(0.5, 1.5)}}));
      const double self = rng.uniform(0.2, 0.8);
      w.self_prob.push_back(self);
      w.next_prob.push_back(1 - self);
    }
    m.models.emplace("w", std::move(w));
    const int T = rng.uniform_int(3, 6);
    std::vector<std::vector<float>> rows;
    for (int t = 0; t < T; ++t)
      rows.push_back({static_cast<float>(rng.uniform(-2, 2))});
    const FrameSequence seq = frames_from(rows);
    double fwd_oracle, vit_oracle;
    enumerate_paths(oracle_chain(m, {"w"}), seq, fwd_oracle, vit_oracle);
    CHECK(std::abs(sequence_loglik(m, {"w"}, seq) - fwd_oracle) < 1e-9);
    CHECK(std::abs(viterbi_score(m, {"w"}, seq) - vit_oracle) < 1e-9);
  }
}

TEST_CASE("too-short sequences return the log-zero sentinel") {
  ModelSet m = tiny_models(0, 1, 2, 3);
  const FrameSequence seq = frames_from({{0.f}});  // T=1 < 2 states
  CHECK(sequence_loglik(m, {"u"}, seq) == kLogZero);
  CHECK_THROWS_AS(forced_align(seq, {"u"}, m), InputError);
}

TEST_CASE("an impossible frame strictly decreases log-likelihood") {
  ModelSet m = tiny_models(0, 0, 1, 1);
  Rng rng(3);
  std::vector<std::vector<float>> rows;
  for (int t = 0; t < 8; ++t)
    rows.push_back({static_cast<float>(rng.gauss() * 0.3)});
  const double base = sequence_loglik(m, {"u"}, frames_from(rows));
  rows[4][0] = 40.0f;  // far outside the variance
  const double worse = sequence_loglik(m, {"u"}, frames_from(rows));
  CHECK(worse < base - 100.0);
}

TEST_CASE("embedded training: monotone log-likelihood, recovered means") {
  // Generate from a known two-symbol source, each 2 states, 1-D.
  Rng rng(21);
  const double gen_means[2][2] = {{-2.0, 0.0}, {2.0, 4.0}};
  const double gen_sigma = 0.4;

  auto sample_word = [&](const std::vector<int>& chars) {
    std::vector<std::vector<float>> rows;
    for (int c : chars)
      for (int s = 0; s < 2; ++s) {
        const int dur = 2 + (rng.uniform() < 0.5 ? 1 : 0);
        for (int k = 0; k < dur; ++k)
          rows.push_back({static_cast<float>(
              rng.gauss(gen_means[c][s], gen_sigma))});
      }
    return frames_from(rows);
  };

  std::vector<std::pair<FrameSequence, std::vector<std::string>>> corpus;
  const std::vector<std::string> names{"p", "q"};
  for (int i = 0; i < 60; ++i) {
    std::vector<int> chars;
    std::vector<std::string> symbols;
    const int len = 1 + (i % 3);
    for (int j = 0; j < len; ++j) {
      const int c = rng.uniform_int(0, 1);
      chars.push_back(c);
      symbols.push_back(names[c]);
    }
    corpus.emplace_back(sample_word(chars), symbols);
  }

  TrainConfig cfg;
  cfg.states = 2;
  cfg.mixtures = 1;
  cfg.iterations = 14;
  cfg.improvement_tol = 0.0;  // run every pass
  const ModelSet trained = train_embedded(corpus, FeatureKind::Phog, cfg);

  REQUIRE(trained.training_loglik.size() >= 12);
  for (size_t i = 1; i < trained.training_loglik.size(); ++i)
    CHECK(trained.training_loglik[i] >=
          trained.training_loglik[i - 1] - 1e-8);

  for (int c = 0; c < 2; ++c) {
    const CharacterHmm& hmm = trained.models.at(names[c]);
    for (int s = 0; s < 2; ++s) {
      CHECK(std::abs(hmm.states[s].means[0][0] - gen_means[c][s]) <=
            0.2 * gen_sigma + 0.05);
    }
  }

  // stochastic parameters after training
  for (const auto& [label, hmm] : trained.models) {
    for (size_t s = 0; s < hmm.states.size(); ++s) {
      double wsum = 0;
      for (double w : hmm.states[s].weights) wsum += w;
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(hmm.self_prob[s] + hmm.next_prob[s] ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("mixture growth reaches the requested target exactly") {
  Rng rng(33);
  std::vector<std::pair<FrameSequence, std::vector<std::string>>> corpus;
  for (int i = 0; i < 30; ++i) {
    std::vector<std::vector<float>> rows;
    const int T = rng.uniform_int(6, 12);
    for (int t = 0; t < T; ++t)
      rows.push_back({static_cast<float>(rng.gauss()),
                      static_cast<float>(rng.gauss(2.0, 1.0))});
    corpus.emplace_back(frames_from(rows),
                        std::vector<std::string>{"z"});
  }
  TrainConfig cfg;
  cfg.states = 2;
  cfg.mixtures = 3;  // non-power-of-two target
  cfg.iterations = 2;
  const ModelSet trained = train_embedded(corpus, FeatureKind::Phog, cfg);
  for (const auto& [label, hmm] : trained.models)
    for (const GmmState& st : hmm.states)
      CHECK(st.weights.size() == 3);
}

TEST_CASE("training rejects under-represented symbols") {
  std::vector<std::pair<FrameSequence, std::vector<std::string>>> corpus;
  corpus.emplace_back(frames_from({{0.f}, {0.f}, {0.f}, {0.f}}),
                      std::vector<std::string>{"a"});
  corpus.emplace_back(frames_from({{0.f}, {0.f}, {0.f}, {0.f}}),
                      std::vector<std::string>{"a", "b"});
  TrainConfig cfg;
  cfg.states = 1;
  cfg.min_occurrences = 3;
  CHECK_THROWS_AS(train_embedded(corpus, FeatureKind::Phog, cfg), InputError);
}

TEST_CASE("lexicon decoding: single word, source wins, oracle scores") {
  ModelSet m = tiny_models(-2, -2, 2, 2, 0.25);

  Rng rng(17);
  auto sample = [&](const std::string& word) {
    std::vector<std::vector<float>> rows;
    for (char ch : word) {
      const double mu = ch == 'u' ? -2.0 : 2.0;
      const int dur = rng.uniform_int(3, 5);
      for (int k = 0; k < dur; ++k)
        rows.push_back({static_cast<float>(rng.gauss(mu, 0.5))});
    }
    return frames_from(rows);
  };

  const std::vector<std::string> lex1{"uv"};
  CHECK(decode_lexicon(sample("uv"), m, lex1).word == "uv");

  const std::vector<std::string> lex2{"uv", "vu"};
  int wins = 0;
  for (int i = 0; i < 200; ++i)
    if (decode_lexicon(sample("uv"), m, lex2).word == "uv") ++wins;
  CHECK(wins >= 190);

  // nbest scores equal individually computed Viterbi scores
  const FrameSequence probe = sample("vu");
  const NBestList list = nbest(probe, m, lex2, 5);
  REQUIRE(list.size() == 2);
  for (const Hypothesis& h : list) {
    const double direct = viterbi_score(m, split_symbols(h.word), probe);
    CHECK(std::abs(h.score - direct) < 1e-9);
  }
  CHECK(list[0].score >= list[1].score);

  CHECK_THROWS_AS(decode_lexicon(probe, m, {}), InputError);
}

TEST_CASE("nbest ranking equals the brute-force per-word ordering") {
  ModelSet m = tiny_models(-1.5, 0.0, 0.5, 2.0, 0.6);
  Rng rng(29);
  std::vector<std::vector<float>> rows;
  for (int t = 0; t < 14; ++t)
    rows.push_back({static_cast<float>(rng.uniform(-2.5, 2.5))});
  const FrameSequence seq = frames_from(rows);

  const std::vector<std::string> lexicon{"uv", "vu", "uu", "vv", "u", "v"};
  const NBestList list = nbest(seq, m, lexicon, static_cast<int>(lexicon.size()));
  REQUIRE(list.size() == lexicon.size());
  // brute-force oracle ordering
  std::vector<Hypothesis> oracle;
  for (const auto& w : lexicon)
    oracle.push_back({w, viterbi_score(m, split_symbols(w), seq)});
  std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  for (size_t i = 0; i < oracle.size(); ++i) {
    CHECK(list[i].word == oracle[i].word);
    CHECK(std::abs(list[i].score - oracle[i].score) < 1e-9);
    if (i > 0) CHECK(list[i].score <= list[i - 1].score + 1e-12);
  }
  // n=1 equals decode_lexicon
  CHECK(nbest(seq, m, lexicon, 1)[0].word ==
        decode_lexicon(seq, m, lexicon).word);
}

TEST_CASE("forced alignment: whole span, change point, contiguous cover") {
  // single character covers everything
  ModelSet single;
  single.dim = 1;
  CharacterHmm a;
  a.label = "a";
  a.states = {make_state({1.0}, {{0.0}}, {{1.0}}),
              make_state({1.0}, {{0.0}}, {{1.0}})};
  a.self_prob = {0.5, 0.5};
  a.next_prob = {0.5, 0.5};
  single.models.emplace("a", std::move(a));
  Rng rng(41);
  std::vector<std::vector<float>> rows;
  for (int t = 0; t < 12; ++t)
    rows.push_back({static_cast<float>(rng.gauss())});
  const Alignment whole = forced_align(frames_from(rows), {"a"}, single);
  REQUIRE(whole.spans.size() == 1);
  CHECK(whole.spans[0] == std::pair<int, int>{0, 12});

  // two well-separated regimes switch at frame 10 of 20
  ModelSet m = tiny_models(0, 0, 3, 3, 0.2);
  int hits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<float>> seq;
    for (int t = 0; t < 10; ++t)
      seq.push_back({static_cast<float>(rng.gauss(0.0, 0.4))});
    for (int t = 0; t < 10; ++t)
      seq.push_back({static_cast<float>(rng.gauss(3.0, 0.4))});
    const Alignment al = forced_align(frames_from(seq), {"u", "v"}, m);
    REQUIRE(al.spans.size() == 2);
    CHECK(al.spans[0].first == 0);
    CHECK(al.spans[0].second == al.spans[1].first);
    CHECK(al.spans[1].second == 20);
    if (al.spans[0].second >= 9 && al.spans[0].second <= 11) ++hits;
  }
  CHECK(hits >= 180);

  // contiguous cover for random feasible cases
  for (int trial = 0; trial < 100; ++trial) {
    const int n_chars = rng.uniform_int(1, 3);
    std::vector<std::string> symbols;
    for (int i = 0; i < n_chars; ++i)
      symbols.push_back(rng.uniform() < 0.5 ? "u" : "v");
    const int T = 2 * n_chars + rng.uniform_int(0, 8);
    std::vector<std::vector<float>> seq;
    for (int t = 0; t < T; ++t)
      seq.push_back({static_cast<float>(rng.uniform(-3, 3))});
    const Alignment al = forced_align(frames_from(seq), symbols, m);
    REQUIRE(al.spans.size() == symbols.size());
    CHECK(al.spans.front().first == 0);
    CHECK(al.spans.back().second == T);
    for (size_t i = 1; i < al.spans.size(); ++i)
      CHECK(al.spans[i].first == al.spans[i - 1].second);
  }
}

TEST_CASE("posterior rescoring shifts scores without changing the argmax") {
  const double s1 = -120.0, s2 = -123.0;
  const double k = 10.0;
  const double r1 = rescore_log_posterior(s1, -std::log(k));
  const double r2 = rescore_log_posterior(s2, -std::log(k));
  CHECK(r1 - s1 == doctest::Approx(-std::log(k)));
  CHECK((r1 > r2) == (s1 > s2));

  // doubling one word's prior raises its score by log 2
  CHECK(rescore_log_posterior(s1, std::log(2.0 / k)) - r1 ==
        doctest::Approx(std::log(2.0)));

  // ranking equals the fully normalized Bayes oracle
  const std::vector<double> liks{-50.0, -48.5, -53.0};
  const std::vector<double> priors{0.2, 0.5, 0.3};
  double evidence = 0.0;
  for (size_t i = 0; i < liks.size(); ++i)
    evidence += std::exp(liks[i]) * priors[i];
  std::vector<double> full, dropped;
  for (size_t i = 0; i < liks.size(); ++i) {
    full.push_back(liks[i] + std::log(priors[i]) - std::log(evidence));
    dropped.push_back(rescore_log_posterior(liks[i], std::log(priors[i])));
  }
  const auto rank = [](const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
    return idx;
  };
  CHECK(rank(full) == rank(dropped));
}

TEST_CASE("model serialization round-trips bit-exactly") {
  Rng rng(55);
  std::vector<std::pair<FrameSequence, std::vector<std::string>>> corpus;
  for (int i = 0; i < 24; ++i) {
    std::vector<std::vector<float>> rows;
    const int T = rng.uniform_int(8, 14);
    for (int t = 0; t < T; ++t)
      rows.push_back({static_cast<float>(rng.gauss()),
                      static_cast<float>(rng.gauss(1.5, 0.8))});
    std::vector<std::string> symbols;
    symbols.push_back(i % 2 == 0 ? "m" : "n");
    if (i % 3 == 0) symbols.push_back("m");
    corpus.emplace_back(frames_from(rows), symbols);
  }
  TrainConfig cfg;
  cfg.states = 2;
  cfg.mixtures = 2;
  cfg.iterations = 3;
  const ModelSet trained = train_embedded(corpus, FeatureKind::Lgh, cfg);

  const std::string path = "/tmp/zonerec_hmm_test.zhm";
  save_model_set(path, trained);
  const ModelSet back = load_model_set(path);

  CHECK(back.feature == trained.feature);
  CHECK(back.dim == trained.dim);
  REQUIRE(back.models.size() == trained.models.size());
  for (const auto& [label, hmm] : trained.models) {
    const CharacterHmm& b = back.models.at(label);
    REQUIRE(b.states.size() == hmm.states.size());
    for (size_t s = 0; s < hmm.states.size(); ++s) {
      CHECK(b.states[s].weights == hmm.states[s].weights);
      CHECK(b.states[s].means == hmm.states[s].means);
      CHECK(b.states[s].vars == hmm.states[s].vars);
      CHECK(b.self_prob[s] == hmm.self_prob[s]);
      CHECK(b.next_prob[s] == hmm.next_prob[s]);
    }
  }

  // decode results identical before/after reload
  std::vector<std::vector<float>> rows;
  for (int t = 0; t < 10; ++t)
    rows.push_back({static_cast<float>(rng.gauss()),
                    static_cast<float>(rng.gauss(1.5, 0.8))});
  const FrameSequence probe = frames_from(rows);
  const std::vector<std::string> lexicon{"m", "n", "mn", "nm", "mm"};
  const NBestList before_list = nbest(probe, trained, lexicon, 5);
  const NBestList after_list = nbest(probe, back, lexicon, 5);
  REQUIRE(before_list.size() == after_list.size());
  for (size_t i = 0; i < before_list.size(); ++i) {
    CHECK(before_list[i].word == after_list[i].word);
    CHECK(before_list[i].score == after_list[i].score);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model_set(path), ModelError);
}
