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

#ifndef LUKTHUNG_DATA_LOGISTIC_REGRESSION_H_
#define LUKTHUNG_DATA_LOGISTIC_REGRESSION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "lukthung/nn/checkpoint.h"

namespace lukthung::data {

// Per-column mean and population standard deviation (floored at 1e-8).
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  static Standardizer Fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> Apply(const std::vector<double>& row) const;
};

struct LogisticRegressionConfig {
  // L2 strength on the weights (not the bias). Negative means 1 / N_train.
  double l2 = -1.0;
  double gradient_tolerance = 1e-6;
  std::size_t max_iterations = 10000;
};

struct LogisticRegressionModel {
  Standardizer standardizer;
  std::vector<double> weights;  // in standardized coordinates
  double bias = 0.0;
  double l2 = 0.0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;

  // Probability of the positive class for a raw (unstandardized) row.
  double Predict(const std::vector<double>& row) const;

};

// LTNN container with architecture "lr_baseline", feature_dim = input width
// and tensors lr.mean, lr.stddev, lr.weight [d] and lr.bias [1]. Values are
// stored as f32 like every other checkpoint.
nn::ModelCheckpoint ToCheckpoint(const LogisticRegressionModel& model);
LogisticRegressionModel LogisticRegressionFromCheckpoint(const nn::ModelCheckpoint& checkpoint);

// Mean logistic loss plus (l2 / 2) * |w|^2 over standardized rows. If
// grad is non-null it receives [dw..., db].
double LogisticObjective(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels, const std::vector<double>& weights,
                         double bias, double l2, std::vector<double>* grad = nullptr);

// Gradient descent with backtracking line search from w = 0 and b = the prior
// logit ln(positives / negatives), until the gradient norm drops below the
// tolerance or the iteration cap is hit.
// Throws ValidationError for empty, ragged or single-class input.
LogisticRegressionModel TrainLogisticRegression(const std::vector<std::vector<double>>& rows,
                                                const std::vector<int>& labels,
                                                const LogisticRegressionConfig& config = {});

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_LOGISTIC_REGRESSION_H_
