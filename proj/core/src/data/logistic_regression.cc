// Copyright 2026 The Lukthung Classifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lukthung/data/logistic_regression.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

constexpr std::string_view kLogisticRegressionArchitecture = "lr_baseline";

constexpr double kStdFloor = 1e-8;

// ln(1 + e^z) without overflow.
double Softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Standardizer Standardizer::Fit(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("standardizer: no rows");
  const std::size_t d = rows.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.stddev.assign(d, 0.0);
  for (const auto& r : rows) {
    if (r.size() != d) throw ValidationError("standardizer: ragged rows");
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += r[j];
  }
  const double n = static_cast<double>(rows.size());
  for (double& m : s.mean) m /= n;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) s.stddev[j] += (r[j] - s.mean[j]) * (r[j] - s.mean[j]);
  }
  for (double& v : s.stddev) v = std::max(std::sqrt(v / n), kStdFloor);
  return s;
}

std::vector<double> Standardizer::Apply(const std::vector<double>& row) const {
  if (row.size() != mean.size()) {
    throw ShapeError("standardizer: row width " + std::to_string(row.size()) +
                     ", expected " + std::to_string(mean.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / stddev[j];
  return out;
}

double LogisticRegressionModel::Predict(const std::vector<double>& row) const {
  return Sigmoid(Dot(weights, standardizer.Apply(row)) + bias);
}

nn::ModelCheckpoint ToCheckpoint(const LogisticRegressionModel& model) {
  const std::size_t d = model.weights.size();
  if (model.standardizer.mean.size() != d || model.standardizer.stddev.size() != d) {
    throw ShapeError("lr model: standardizer and weights differ in width");
  }
  const auto tensor = [](const std::vector<double>& v) {
    nn::Tensor t({v.size()});
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = static_cast<float>(v[i]);
    return t;
  };
  nn::ModelCheckpoint c;
  c.SetMeta("architecture", std::string(kLogisticRegressionArchitecture));
  c.SetMeta("feature_dim", std::to_string(d));
  c.SetMeta("l2", FormatDouble(model.l2));
  c.SetMeta("iterations", std::to_string(model.iterations));
  c.SetMeta("converged", model.converged ? "true" : "false");
  c.AddTensor("lr.mean", tensor(model.standardizer.mean));
  c.AddTensor("lr.stddev", tensor(model.standardizer.stddev));
  c.AddTensor("lr.weight", tensor(model.weights));
  c.AddTensor("lr.bias", tensor({model.bias}));
  return c;
}

LogisticRegressionModel LogisticRegressionFromCheckpoint(const nn::ModelCheckpoint& checkpoint) {
  if (!checkpoint.HasMeta("architecture") ||
      checkpoint.Meta("architecture") != kLogisticRegressionArchitecture) {
    throw ValidationError("checkpoint is not an lr_baseline model");
  }
  std::size_t d = 0;
  try {
    d = std::stoul(checkpoint.Meta("feature_dim"));
  } catch (const std::logic_error&) {
    throw CorruptInputError("lr model: bad feature_dim '" + checkpoint.Meta("feature_dim") + "'");
  }
  const auto values = [&](const std::string& name, std::size_t n) {
    const nn::Tensor& t = checkpoint.TensorChecked(name, {n});
    return std::vector<double>(t.values().begin(), t.values().end());
  };
  LogisticRegressionModel m;
  m.standardizer.mean = values("lr.mean", d);
  m.standardizer.stddev = values("lr.stddev", d);
  m.weights = values("lr.weight", d);
  m.bias = values("lr.bias", 1)[0];
  try {
    m.l2 = std::stod(checkpoint.Meta("l2"));
    m.iterations = std::stoul(checkpoint.Meta("iterations"));
  } catch (const std::logic_error&) {
    throw CorruptInputError("lr model: bad l2 or iterations metadata");
  }
  m.converged = checkpoint.Meta("converged") == "true";
  return m;
}

double LogisticObjective(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels, const std::vector<double>& weights,
                         double bias, double l2, std::vector<double>* grad) {
  const std::size_t d = weights.size();
  const double n = static_cast<double>(rows.size());
  double loss = 0.0;
  if (grad != nullptr) grad->assign(d + 1, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double z = Dot(weights, rows[i]) + bias;
    // -[y ln s(z) + (1 - y) ln(1 - s(z))] = softplus(z) - y z
    loss += Softplus(z) - labels[i] * z;
    if (grad != nullptr) {
      const double r = Sigmoid(z) - labels[i];
      for (std::size_t j = 0; j < d; ++j) (*grad)[j] += r * rows[i][j];
      (*grad)[d] += r;
    }
  }
  loss /= n;
  loss += 0.5 * l2 * Dot(weights, weights);
  if (grad != nullptr) {
    for (double& g : *grad) g /= n;
    for (std::size_t j = 0; j < d; ++j) (*grad)[j] += l2 * weights[j];
  }
  return loss;
}

LogisticRegressionModel TrainLogisticRegression(const std::vector<std::vector<double>>& rows,
                                                const std::vector<int>& labels,
                                                const LogisticRegressionConfig& config) {
  if (rows.empty() || rows.size() != labels.size()) {
    throw ValidationError("logistic regression: need equal, non-zero numbers of rows and labels");
  }
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  const auto neg = std::count(labels.begin(), labels.end(), 0);
  if (pos + neg != static_cast<std::ptrdiff_t>(labels.size())) {
    throw ValidationError("logistic regression: labels must be 0 or 1");
  }
  if (pos == 0 || neg == 0) {
    throw ValidationError("logistic regression: training set has a single class");
  }

  LogisticRegressionModel m;
  m.standardizer = Standardizer::Fit(rows);
  std::vector<std::vector<double>> x;
  x.reserve(rows.size());
  for (const auto& r : rows) x.push_back(m.standardizer.Apply(r));

  const std::size_t d = m.standardizer.mean.size();
  m.l2 = config.l2 < 0 ? 1.0 / static_cast<double>(rows.size()) : config.l2;
  m.weights.assign(d, 0.0);
  // The prior logit is the exact optimum of the bias at w = 0. Starting there
  // matters under a strong penalty, where the step size is bounded by l2 and
  // the unpenalized bias would otherwise crawl.
  m.bias = std::log(static_cast<double>(pos) / static_cast<double>(neg));
  std::vector<double> grad;
  double f = LogisticObjective(x, labels, m.weights, m.bias, m.l2, &grad);
  double step = 1.0;
  std::vector<double> w_new(d);
  std::vector<double> grad_new;
  for (m.iterations = 0;; ++m.iterations) {
    m.gradient_norm = std::sqrt(Dot(grad, grad));
    if (m.gradient_norm < config.gradient_tolerance) {
      m.converged = true;
      break;
    }
    if (m.iterations == config.max_iterations) break;
    // Armijo backtracking; the trial step starts from twice the last
    // accepted one so it can grow again after a cautious stretch.
    step = std::min(step * 2.0, 1e6);
    const double g2 = m.gradient_norm * m.gradient_norm;
    double f_new = 0.0;
    double b_new = 0.0;
    while (true) {
      for (std::size_t j = 0; j < d; ++j) w_new[j] = m.weights[j] - step * grad[j];
      b_new = m.bias - step * grad[d];
      f_new = LogisticObjective(x, labels, w_new, b_new, m.l2, &grad_new);
      if (f_new <= f - 0.5 * step * g2 || step < 1e-12) break;
      step *= 0.5;
    }
    m.weights = w_new;
    m.bias = b_new;
    f = f_new;
    grad.swap(grad_new);
  }
  if (!std::isfinite(f)) throw NumericError("logistic regression diverged");
  return m;
}

}  // namespace lukthung::data
