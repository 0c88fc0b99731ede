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

#include "zonerec/svm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "zonerec/features.hpp"

namespace zonerec {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

double rbf(const std::vector<double>& a, const std::vector<double>& b,
           double gamma) {
  return std::exp(-gamma * sq_dist(a, b));
}

}  // namespace

BinarySvm smo_train(const std::vector<std::vector<double>>& x,
                    const std::vector<int>& y, double c, double gamma,
                    double tol, int max_iter) {
  const int n = static_cast<int>(x.size());
  if (n == 0 || y.size() != x.size())
    throw InputError("smo_train: empty or mismatched training data");
  bool has_pos = false, has_neg = false;
  for (int v : y) {
    if (v == 1) has_pos = true;
    else if (v == -1) has_neg = true;
    else throw InputError("smo_train: labels must be -1 or +1");
  }
  if (!has_pos || !has_neg)
    throw InputError("smo_train: need at least one example per class");

  // dense kernel cache
  std::vector<double> K(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = rbf(x[i], x[j], gamma);
      K[static_cast<size_t>(i) * n + j] = v;
      K[static_cast<size_t>(j) * n + i] = v;
    }

  // minimize 1/2 a'Qa - e'a, Q_ij = y_i y_j K_ij, 0 <= a <= C, y'a = 0
  std::vector<double> alpha(n, 0.0), grad(n, -1.0);

  for (int iter = 0; iter < max_iter; ++iter) {
    // maximal violating pair
    double up_best = -1e300, low_best = 1e300;
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k) {
      const double v = -y[k] * grad[k];
      const bool in_up = (y[k] == 1 && alpha[k] < c - 1e-12) ||
                         (y[k] == -1 && alpha[k] > 1e-12);
      const bool in_low = (y[k] == -1 && alpha[k] < c - 1e-12) ||
                          (y[k] == 1 && alpha[k] > 1e-12);
      if (in_up && v > up_best) {
        up_best = v;
        i = k;
      }
      if (in_low && v < low_best) {
        low_best = v;
        j = k;
      }
    }
    if (i < 0 || j < 0 || up_best - low_best <= tol) break;

    // pair update along d: alpha_i += y_i t, alpha_j -= y_j t
    const double kii = K[static_cast<size_t>(i) * n + i];
    const double kjj = K[static_cast<size_t>(j) * n + j];
    const double kij = K[static_cast<size_t>(i) * n + j];
    const double quad = std::max(kii + kjj - 2.0 * kij, 1e-12);
    double t = (up_best - low_best) / quad;

    // clip to the box
    if (y[i] == 1) t = std::min(t, c - alpha[i]);
    else t = std::min(t, alpha[i]);
    if (y[j] == 1) t = std::min(t, alpha[j]);
    else t = std::min(t, c - alpha[j]);
    if (t <= 0.0) break;

    // direction d = (+y_i, -y_j) keeps y'a = 0
    alpha[i] += y[i] * t;
    alpha[j] -= y[j] * t;
    for (int k = 0; k < n; ++k) {
      grad[k] += y[k] * t *
                 (K[static_cast<size_t>(k) * n + i] -
                  K[static_cast<size_t>(k) * n + j]);
    }
  }

  // bias from free vectors, midpoint of the violating bounds otherwise
  double up_best = -1e300, low_best = 1e300;
  double free_sum = 0.0;
  int free_count = 0;
  for (int k = 0; k < n; ++k) {
    const double v = -y[k] * grad[k];
    const bool in_up = (y[k] == 1 && alpha[k] < c - 1e-12) ||
                       (y[k] == -1 && alpha[k] > 1e-12);
    const bool in_low = (y[k] == -1 && alpha[k] < c - 1e-12) ||
                        (y[k] == 1 && alpha[k] > 1e-12);
    if (in_up) up_best = std::max(up_best, v);
    if (in_low) low_best = std::min(low_best, v);
    if (alpha[k] > 1e-12 && alpha[k] < c - 1e-12) {
      free_sum += v;
      ++free_count;
    }
  }
  double bias;
  if (free_count > 0) bias = free_sum / free_count;
  else bias = (up_best + low_best) / 2.0;

  BinarySvm m;
  m.gamma = gamma;
  m.c = c;
  m.bias = bias;
  for (int k = 0; k < n; ++k) {
    if (alpha[k] > 1e-12) {
      m.support_vectors.push_back(x[k]);
      m.coef.push_back(alpha[k] * y[k]);
    }
  }
  return m;
}

double decision(const BinarySvm& m, const std::vector<double>& x) {
  if (!m.support_vectors.empty() && m.support_vectors[0].size() != x.size())
    throw InputError("decision: dimensionality mismatch");
  double acc = m.bias;
  for (size_t j = 0; j < m.support_vectors.size(); ++j)
    acc += m.coef[j] * rbf(m.support_vectors[j], x, m.gamma);
  return acc;
}

PlattParams platt_fit(const std::vector<double>& decisions,
                      const std::vector<int>& labels) {
  const int n = static_cast<int>(decisions.size());
  int n_pos = 0, n_neg = 0;
  for (int v : labels) (v > 0 ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw InputError("platt_fit: need both classes");

  const double hi = (n_pos + 1.0) / (n_pos + 2.0);
  const double lo = 1.0 / (n_neg + 2.0);
  std::vector<double> target(n);
  for (int k = 0; k < n; ++k) target[k] = labels[k] > 0 ? hi : lo;

  double a = 0.0, b = std::log((n_neg + 1.0) / (n_pos + 1.0));
  auto objective = [&](double aa, double bb) {
    double f = 0.0;
    for (int k = 0; k < n; ++k) {
      const double z = decisions[k] * aa + bb;
      if (z >= 0)
        f += target[k] * z + std::log1p(std::exp(-z));
      else
        f += (target[k] - 1.0) * z + std::log1p(std::exp(z));
    }
    return f;
  };

  double fval = objective(a, b);
  constexpr double kSigma = 1e-12;
  for (int it = 0; it < 100; ++it) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double z = decisions[k] * a + b;
      const double p = z >= 0 ? std::exp(-z) / (1.0 + std::exp(-z))
                              : 1.0 / (1.0 + std::exp(z));
      const double q = 1.0 - p;
      const double d2 = p * q;
      h11 += decisions[k] * decisions[k] * d2;
      h22 += d2;
      h21 += decisions[k] * d2;
      const double d1 = target[k] - p;
      g1 += decisions[k] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;

    double step = 1.0;
    while (step >= 1e-10) {
      const double na = a + step * da, nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < 1e-10) break;
  }
  return PlattParams{a, b};
}

double platt_prob(const PlattParams& p, double f) {
  const double z = p.a * f + p.b;
  if (z >= 0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

std::vector<double> glyph_features(const BinaryImage& glyph, int input_size) {
  const BinaryImage sized = resize_nearest(glyph, input_size, input_size);
  const FloatImage smoothed = smooth(to_float(sized), 1.0);
  const std::vector<float> f = phog(smoothed);
  return std::vector<double>(f.begin(), f.end());
}

SvmModel train_multiclass(const std::vector<std::vector<double>>& features,
                          const std::vector<int>& label_ids,
                          const std::vector<std::string>& label_names,
                          double c, double gamma) {
  if (features.size() != label_ids.size())
    throw InputError("train_multiclass: size mismatch");
  const int k = static_cast<int>(label_names.size());
  if (k < 2) throw InputError("train_multiclass: need at least two classes");

  SvmModel model;
  model.labels = label_names;
  model.c = c;
  model.gamma = gamma;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::vector<std::vector<double>> xs;
      std::vector<int> ys;
      for (size_t t = 0; t < features.size(); ++t) {
        if (label_ids[t] == i) {
          xs.push_back(features[t]);
          ys.push_back(+1);
        } else if (label_ids[t] == j) {
          xs.push_back(features[t]);
          ys.push_back(-1);
        }
      }
      if (xs.empty())
        throw InputError("train_multiclass: empty pair " + label_names[i] +
                         "/" + label_names[j]);
      SvmModel::PairMachine pm;
      pm.i = i;
      pm.j = j;
      pm.machine = smo_train(xs, ys, c, gamma);
      std::vector<double> decs(xs.size());
      for (size_t t = 0; t < xs.size(); ++t)
        decs[t] = decision(pm.machine, xs[t]);
      pm.platt = platt_fit(decs, ys);
      model.pairs.push_back(std::move(pm));
    }
  }
  return model;
}

std::map<std::string, double> predict_proba_features(
    const SvmModel& model, const std::vector<double>& features) {
  if (!model.trained()) throw ModelError("predict_proba: untrained model");
  // Renormalized pairwise products: each class accumulates the log of its
  // calibrated win probability over every pair it takes part in. This
  // reduces to the raw Platt output for two classes and saturates toward 1
  // for points deep inside a class, which plain vote counting cannot do.
  std::vector<double> log_score(model.labels.size(), 0.0);
  for (const auto& pm : model.pairs) {
    const double p = std::clamp(
        platt_prob(pm.platt, decision(pm.machine, features)), 1e-7, 1 - 1e-7);
    log_score[pm.i] += std::log(p);
    log_score[pm.j] += std::log1p(-p);
  }
  const double peak = *std::max_element(log_score.begin(), log_score.end());
  double total = 0.0;
  std::vector<double> score(model.labels.size());
  for (size_t i = 0; i < score.size(); ++i) {
    score[i] = std::exp(log_score[i] - peak);
    total += score[i];
  }
  std::map<std::string, double> out;
  for (size_t i = 0; i < model.labels.size(); ++i)
    out[model.labels[i]] = score[i] / total;
  return out;
}

std::map<std::string, double> predict_proba(const SvmModel& model,
                                            const BinaryImage& glyph) {
  if (!model.trained()) throw ModelError("predict_proba: untrained model");
  return predict_proba_features(model, glyph_features(glyph, model.input_size));
}

namespace {

double multiclass_accuracy(const SvmModel& model,
                           const std::vector<std::vector<double>>& xs,
                           const std::vector<int>& ys) {
  if (xs.empty()) return 0.0;
  int correct = 0;
  for (size_t t = 0; t < xs.size(); ++t) {
    const auto post = predict_proba_features(model, xs[t]);
    int best = 0;
    double best_p = -1.0;
    for (size_t i = 0; i < model.labels.size(); ++i) {
      const double p = post.at(model.labels[i]);
      if (p > best_p) {
        best_p = p;
        best = static_cast<int>(i);
      }
    }
    if (best == ys[t]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(xs.size());
}

}  // namespace

GridPoint grid_search(const std::vector<std::vector<double>>& train_x,
                      const std::vector<int>& train_y,
                      const std::vector<std::vector<double>>& val_x,
                      const std::vector<int>& val_y,
                      const std::vector<std::string>& label_names,
                      const std::vector<double>& c_grid,
                      const std::vector<double>& gamma_grid) {
  if (c_grid.empty() || gamma_grid.empty())
    throw InputError("grid_search: empty grid");
  if (val_x.empty()) throw InputError("grid_search: empty validation split");

  auto evaluate = [&](double c, double gamma) {
    const SvmModel m = train_multiclass(train_x, train_y, label_names, c, gamma);
    return multiclass_accuracy(m, val_x, val_y);
  };
  auto better = [](const GridPoint& a, const GridPoint& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    if (a.c != b.c) return a.c < b.c;
    return a.gamma < b.gamma;
  };

  GridPoint best;
  bool first = true;
  for (double c : c_grid) {
    for (double gamma : gamma_grid) {
      const GridPoint p{c, gamma, evaluate(c, gamma)};
      if (first || better(p, best)) {
        best = p;
        first = false;
      }
    }
  }
  // finer pass around the winner; a refinement replaces the coarse choice
  // only on a strict accuracy improvement (ties among refinements still
  // prefer smaller c, then smaller gamma)
  GridPoint fine = best;
  for (double fc : {0.5, 1.0, 2.0}) {
    for (double fg : {0.5, 1.0, 2.0}) {
      if (fc == 1.0 && fg == 1.0) continue;
      const GridPoint p{best.c * fc, best.gamma * fg,
                        evaluate(best.c * fc, best.gamma * fg)};
      if (p.accuracy > best.accuracy && better(p, fine)) fine = p;
    }
  }
  return fine;
}

std::vector<double> default_c_grid() {
  std::vector<double> out;
  for (int e = -2; e <= 10; e += 2) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> out;
  for (int e = -10; e <= 2; e += 2) out.push_back(std::ldexp(1.0, e));
  return out;
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
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void save_svm_model(const std::string& path, const SvmModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  const int dim = model.pairs.empty() || model.pairs[0].machine.support_vectors.empty()
                      ? 168
                      : static_cast<int>(
                            model.pairs[0].machine.support_vectors[0].size());
  out << "ZONEREC SVM 1\n";
  out << "input_size " << model.input_size << "\n";
  out << "dim " << dim << "\n";
  out.precision(17);
  out << "c " << model.c << "\n";
  out << "gamma " << model.gamma << "\n";
  out << "labels " << model.labels.size() << "\n";
  for (const auto& label : model.labels) out << "label " << label << "\n";
  out << "pairs " << model.pairs.size() << "\n";
  for (const auto& pm : model.pairs)
    out << "pair " << pm.i << " " << pm.j << " "
        << pm.machine.support_vectors.size() << "\n";
  out << "BINARY\n";
  for (const auto& pm : model.pairs) {
    for (const auto& sv : pm.machine.support_vectors)
      for (double v : sv) put_f64(out, v);
    for (double v : pm.machine.coef) put_f64(out, v);
    put_f64(out, pm.machine.bias);
    put_f64(out, pm.machine.gamma);
    put_f64(out, pm.machine.c);
    put_f64(out, pm.platt.a);
    put_f64(out, pm.platt.b);
  }
  if (!out) throw InputError("write failed: " + path);
}

SvmModel load_svm_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file " + path);
  std::string line;
  if (!std::getline(in, line) || line != "ZONEREC SVM 1")
    throw ModelError(path + ": not an svm model file");

  SvmModel model;
  int dim = 0;
  std::vector<std::array<int, 3>> pair_layout;
  while (std::getline(in, line)) {
    if (line == "BINARY") break;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "input_size") ss >> model.input_size;
    else if (key == "dim") ss >> dim;
    else if (key == "c") ss >> model.c;
    else if (key == "gamma") ss >> model.gamma;
    else if (key == "labels") continue;
    else if (key == "label") {
      std::string name;
      ss >> name;
      model.labels.push_back(name);
    } else if (key == "pairs") continue;
    else if (key == "pair") {
      std::array<int, 3> p{};
      ss >> p[0] >> p[1] >> p[2];
      pair_layout.push_back(p);
    } else {
      throw ModelError(path + ": unknown header field '" + key + "'");
    }
  }
  if (dim <= 0) throw ModelError(path + ": missing descriptor size");
  for (const auto& [i, j, n_sv] : pair_layout) {
    SvmModel::PairMachine pm;
    pm.i = i;
    pm.j = j;
    pm.machine.support_vectors.assign(n_sv, std::vector<double>(dim, 0.0));
    pm.machine.coef.assign(n_sv, 0.0);
    for (auto& sv : pm.machine.support_vectors)
      for (double& v : sv) v = get_f64(in);
    for (double& v : pm.machine.coef) v = get_f64(in);
    pm.machine.bias = get_f64(in);
    pm.machine.gamma = get_f64(in);
    pm.machine.c = get_f64(in);
    pm.platt.a = get_f64(in);
    pm.platt.b = get_f64(in);
    model.pairs.push_back(std::move(pm));
  }
  if (!in) throw ModelError(path + ": truncated parameter block");
  return model;
}

}  // namespace zonerec
