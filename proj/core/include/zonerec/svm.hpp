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

#include "zonerec/raster.hpp"

namespace zonerec {

// One RBF binary machine: f(x) = sum_j coef_j * exp(-gamma |x - sv_j|^2) + b
// with coef_j = alpha_j * y_j.
struct BinarySvm {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> coef;
  double bias = 0.0;
  double gamma = 1.0;
  double c = 1.0;  // box constraint used in training
};

// Sigmoid calibration p(+1|f) = 1 / (1 + exp(a*f + b)).
struct PlattParams {
  double a = -1.0;
  double b = 0.0;
};

// SMO with maximal-violating-pair working set selection; stops when the
// KKT gap falls under tol (default 1e-3) or after max_iter updates.
// Labels must be -1/+1 with both classes present.
BinarySvm smo_train(const std::vector<std::vector<double>>& x,
                    const std::vector<int>& y, double c, double gamma,
                    double tol = 1e-3, int max_iter = 100000);

double decision(const BinarySvm& m, const std::vector<double>& x);

// Negative-log-likelihood sigmoid fit with Platt's target smoothing,
// Newton iterations with backtracking.
PlattParams platt_fit(const std::vector<double>& decisions,
                      const std::vector<int>& labels);
double platt_prob(const PlattParams& p, double f);

// One-vs-one multiclass model over 150x150 glyphs -> 168-dim descriptors.
struct SvmModel {
  struct PairMachine {
    int i = 0;
    int j = 0;  // positive decision favors labels[i]
    BinarySvm machine;
    PlattParams platt;
  };
  std::vector<std::string> labels;
  std::vector<PairMachine> pairs;
  int input_size = 150;
  double c = 0.0;
  double gamma = 0.0;

  bool trained() const { return !labels.empty(); }
};

// Descriptor used by the modifier classifier: stretch to input_size square,
// smooth, pyramid orientation histogram (168 values).
std::vector<double> glyph_features(const BinaryImage& glyph, int input_size);

SvmModel train_multiclass(const std::vector<std::vector<double>>& features,
                          const std::vector<int>& label_ids,
                          const std::vector<std::string>& label_names,
                          double c, double gamma);

// Pairwise Platt probabilities coupled by normalized voting; posteriors
// sum to one. The glyph overload extracts descriptors first.
std::map<std::string, double> predict_proba_features(
    const SvmModel& model, const std::vector<double>& features);
std::map<std::string, double> predict_proba(const SvmModel& model,
                                            const BinaryImage& glyph);

struct GridPoint {
  double c = 0.0;
  double gamma = 0.0;
  double accuracy = 0.0;
};

// Coarse pass over the supplied grids, then a x{0.5,1,2} refinement around
// the best cell; ties prefer smaller c, then smaller gamma.
GridPoint grid_search(const std::vector<std::vector<double>>& train_x,
                      const std::vector<int>& train_y,
                      const std::vector<std::vector<double>>& val_x,
                      const std::vector<int>& val_y,
                      const std::vector<std::string>& label_names,
                      const std::vector<double>& c_grid,
                      const std::vector<double>& gamma_grid);

std::vector<double> default_c_grid();      // powers of 4 in 2^-2 .. 2^10
std::vector<double> default_gamma_grid();  // powers of 4 in 2^-10 .. 2^2

void save_svm_model(const std::string& path, const SvmModel& model);
SvmModel load_svm_model(const std::string& path);

}  // namespace zonerec
