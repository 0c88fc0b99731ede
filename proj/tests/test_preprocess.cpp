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

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "zonerec/preprocess.hpp"
#include "zonerec/synth.hpp"

using namespace zonerec;
using namespace zonerec::test;

namespace {

BinaryImage binarize(const RasterImage& gray) {
  return otsu_binarize(gray).image;
}

RenderedWord make_word(Rng& rng, double skew, double slant) {
  const AlphabetSpec alphabet = toy_alphabet();
  const WordSpec word = random_word(alphabet, rng, 3, 6);
  DistortOptions d;
  d.skew_deg = skew;
  d.slant_deg = slant;
  d.touching_lower_prob = 0.0;
  return render_word(alphabet, word, rng, d);
}

}  // namespace

TEST_CASE("skew estimate recovers synthetic rotation within 1.5 degrees") {
  Rng rng(101);
  int ok = 0, total = 0;
  for (double theta : {5.0, -5.0, 8.0, -3.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const RenderedWord w = make_word(rng, theta, 0.0);
      const SkewEstimate est = estimate_skew(binarize(w.gray));
      CHECK_FALSE(est.fallback);
      ++total;
      if (std::abs(est.theta_deg - theta) <= 1.5) ++ok;
    }
  }
  CHECK(ok >= total * 9 / 10);
}

TEST_CASE("horizontal words measure near-zero skew") {
  Rng rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const RenderedWord w = make_word(rng, 0.0, 0.0);
    const SkewEstimate est = estimate_skew(binarize(w.gray));
    CHECK(std::abs(est.theta_deg) <= 1.0);
  }
}

TEST_CASE("a single blob without reservoirs falls back to zero") {
  BinaryImage blob(20, 20, false);
  draw_rect(blob, 4, 4, 15, 15);
  const SkewEstimate est = estimate_skew(blob);
  CHECK(est.fallback);
  CHECK(est.theta_deg == 0.0);
}

TEST_CASE("skew estimation is translation invariant") {
  Rng rng(303);
  const RenderedWord w = make_word(rng, 4.0, 0.0);
  const BinaryImage bin = binarize(w.gray);
  BinaryImage shifted(bin.width + 14, bin.height + 9, false);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c)
      if (bin.get(r, c)) shifted.set(r + 9, c + 14, true);
  const double a = estimate_skew(bin).theta_deg;
  const double b = estimate_skew(shifted).theta_deg;
  CHECK(std::abs(a - b) <= 1e-9);
}

TEST_CASE("skew round trip leaves residual under 1.5 degrees") {
  Rng rng(404);
  int ok = 0, total = 0;
  for (double theta : {7.0, -7.0, 10.0}) {
    for (int trial = 0; trial < 6; ++trial) {
      const RenderedWord w = make_word(rng, theta, 0.0);
      const BinaryImage bin = binarize(w.gray);
      const SkewEstimate est = estimate_skew(bin);
      const BinaryImage fixed = correct_skew(bin, est.theta_deg);
      const SkewEstimate residual = estimate_skew(fixed);
      ++total;
      if (std::abs(residual.theta_deg) <= 1.5) ++ok;
    }
  }
  CHECK(ok >= total * 9 / 10);
}

TEST_CASE("skew correction at zero is the identity; angles are clamped") {
  BinaryImage im(12, 8, false);
  draw_rect(im, 2, 2, 5, 9);
  CHECK(correct_skew(im, 0.0) == im);
  CHECK_NOTHROW(correct_skew(im, 80.0));  // clamped to 45
}

TEST_CASE("slant estimate recovers synthetic shear within 3 degrees") {
  Rng rng(505);
  int ok = 0, total = 0;
  for (double phi : {10.0, -10.0, 5.0, -15.0}) {
    for (int trial = 0; trial < 8; ++trial) {
      const RenderedWord w = make_word(rng, 0.0, phi);
      const SlantEstimate est = estimate_slant(binarize(w.gray));
      ++total;
      if (std::abs(est.phi_deg - phi) <= 3.0) ++ok;
    }
  }
  CHECK(ok >= total * 85 / 100);
}

TEST_CASE("unslanted vertical strokes measure under 2 degrees") {
  Rng rng(606);
  for (int trial = 0; trial < 8; ++trial) {
    const RenderedWord w = make_word(rng, 0.0, 0.0);
    const SlantEstimate est = estimate_slant(binarize(w.gray));
    CHECK(std::abs(est.phi_deg) <= 2.0);
  }
}

TEST_CASE("blank image slants to zero") {
  const SlantEstimate est = estimate_slant(BinaryImage(10, 10, false));
  CHECK(est.blank);
  CHECK(est.phi_deg == 0.0);
}

TEST_CASE("peakiness at the true inverse shear beats angles 20 degrees off") {
  Rng rng(707);
  int wins = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // Parallel vertical strokes sheared by a known angle.
    BinaryImage strokes(60, 30, false);
    const int n = rng.uniform_int(3, 5);
    for (int i = 0; i < n; ++i) {
      const int x = 6 + i * 12 + rng.uniform_int(-1, 1);
      draw_rect(strokes, 2, x, 27, x + 1);
    }
    const double phi = rng.uniform(-15.0, 15.0);
    const BinaryImage sheared = shear(strokes, phi);
    const double at_truth = slant_peakiness(sheared, phi);
    ++total;
    if (at_truth > slant_peakiness(sheared, phi + 20.0) &&
        at_truth > slant_peakiness(sheared, phi - 20.0))
      ++wins;
  }
  CHECK(wins == total);
}

TEST_CASE("slant round trip residual stays under 3 degrees") {
  Rng rng(808);
  int ok = 0, total = 0;
  for (double phi : {12.0, -8.0}) {
    for (int trial = 0; trial < 6; ++trial) {
      const RenderedWord w = make_word(rng, 0.0, phi);
      const BinaryImage bin = binarize(w.gray);
      const SlantEstimate est = estimate_slant(bin);
      const BinaryImage fixed = correct_slant(bin, est.phi_deg);
      const SlantEstimate residual = estimate_slant(fixed);
      ++total;
      if (std::abs(residual.phi_deg) <= 3.0) ++ok;
    }
  }
  CHECK(ok >= total * 9 / 10);
}

TEST_CASE("estimate-and-correct is idempotent within a degree") {
  Rng rng(909);
  for (int trial = 0; trial < 5; ++trial) {
    const RenderedWord w = make_word(rng, 6.0, 0.0);
    const BinaryImage bin = binarize(w.gray);
    const BinaryImage once = correct_skew(bin, estimate_skew(bin).theta_deg);
    const double second = estimate_skew(once).theta_deg;
    const BinaryImage twice = correct_skew(once, second);
    const double third = estimate_skew(twice).theta_deg;
    CHECK(std::abs(second - third) <= 1.0 + 1e-9);
  }
}
