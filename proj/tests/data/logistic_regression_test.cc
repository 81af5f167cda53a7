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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "lukthung/data/logistic_regression.h"
#include "lukthung/errors.h"

namespace lukthung::data {
namespace {

using Rows = std::vector<std::vector<double>>;

// Overlapping Gaussian classes in d dimensions with correlated columns, so
// the optimum is finite and the problem is not trivially conditioned.
void MakeData(std::size_t n, std::size_t d, std::uint64_t seed, Rows* rows,
              std::vector<int>* labels) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  rows->clear();
  labels->clear();
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    std::vector<double> r(d);
    const double shared = gauss(rng);
    for (std::size_t j = 0; j < d; ++j) {
      r[j] = 3.0 * j + (j + 1) * (0.5 * shared + gauss(rng) + (y ? 0.4 : -0.4) * (j % 3 == 0));
    }
    rows->push_back(r);
    labels->push_back(y);
  }
}

std::vector<double> FiniteDifferenceGradient(const Rows& x, const std::vector<int>& y,
                                             std::vector<double> w, double b, double l2) {
  const double h = 1e-5;
  std::vector<double> g(w.size() + 1);
  for (std::size_t j = 0; j <= w.size(); ++j) {
    double& p = j < w.size() ? w[j] : b;
    const double saved = p;
    p = saved + h;
    const double up = LogisticObjective(x, y, w, b, l2);
    p = saved - h;
    const double down = LogisticObjective(x, y, w, b, l2);
    p = saved;
    g[j] = (up - down) / (2 * h);
  }
  return g;
}

TEST(LogisticObjective, GradientMatchesFiniteDifferences) {
  Rows x;
  std::vector<int> y;
  MakeData(50, 6, 1, &x, &y);
  const Standardizer s = Standardizer::Fit(x);
  for (auto& r : x) r = s.Apply(r);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(6);
  for (double& v : w) v = gauss(rng);
  const double b = 0.3;
  std::vector<double> grad;
  LogisticObjective(x, y, w, b, 0.7, &grad);
  const auto numeric = FiniteDifferenceGradient(x, y, w, b, 0.7);
  ASSERT_EQ(grad.size(), numeric.size());
  for (std::size_t j = 0; j < grad.size(); ++j) EXPECT_NEAR(grad[j], numeric[j], 1e-8) << j;
}

TEST(LogisticObjective, StableForLargeMargins) {
  const Rows x = {{1000.0}, {-1000.0}};
  const std::vector<int> y = {1, 0};
  EXPECT_NEAR(LogisticObjective(x, y, {1.0}, 0.0, 0.0), 0.0, 1e-300);
  EXPECT_NEAR(LogisticObjective(x, y, {-1.0}, 0.0, 0.0), 1000.0, 1e-9);
}

TEST(Standardizer, ZeroMeanUnitPopulationStd) {
  const Rows rows = {{1, 5}, {3, 5}, {5, 5}};
  const Standardizer s = Standardizer::Fit(rows);
  EXPECT_DOUBLE_EQ(s.mean[0], 3.0);
  EXPECT_DOUBLE_EQ(s.stddev[0], std::sqrt(8.0 / 3.0));
  EXPECT_EQ(s.stddev[1], 1e-8);  // constant column is floored
  const auto z = s.Apply({5, 5});
  EXPECT_DOUBLE_EQ(z[0], 2.0 / std::sqrt(8.0 / 3.0));
  EXPECT_EQ(z[1], 0.0);
  EXPECT_THROW(s.Apply({1.0}), ShapeError);
  EXPECT_THROW(Standardizer::Fit({}), ValidationError);
  EXPECT_THROW(Standardizer::Fit({{1, 2}, {1}}), ValidationError);
}

TEST(LogisticRegression, ConvergesToAStationaryPoint) {
  Rows x;
  std::vector<int> y;
  MakeData(200, 40, 3, &x, &y);
  const LogisticRegressionModel m = TrainLogisticRegression(x, y);
  EXPECT_TRUE(m.converged);
  EXPECT_LT(m.gradient_norm, 1e-6);
  EXPECT_DOUBLE_EQ(m.l2, 1.0 / 200);
  Rows z;
  for (const auto& r : x) z.push_back(m.standardizer.Apply(r));
  const auto g = FiniteDifferenceGradient(z, y, m.weights, m.bias, m.l2);
  double norm = 0.0;
  for (double v : g) norm += v * v;
  EXPECT_LT(std::sqrt(norm), 1e-6 + 1e-8);
}

TEST(LogisticRegression, SeparableTwoPointSet) {
  const Rows x = {{-1.0, 2.0}, {1.0, 2.5}};
  const std::vector<int> y = {0, 1};
  const LogisticRegressionModel m = TrainLogisticRegression(x, y);
  EXPECT_TRUE(m.converged);
  EXPECT_LT(m.Predict(x[0]), 0.5);
  EXPECT_GT(m.Predict(x[1]), 0.5);
}

TEST(LogisticRegression, StrongPenaltyGivesClassPrior) {
  Rows x;
  std::vector<int> y;
  MakeData(40, 5, 4, &x, &y);
  for (std::size_t i = 0; i < 10; ++i) y[2 * i] = 1;  // 30 positives, 10 negatives
  LogisticRegressionConfig config;
  config.l2 = 1e9;
  const LogisticRegressionModel m = TrainLogisticRegression(x, y, config);
  for (double w : m.weights) EXPECT_LT(std::abs(w), 1e-8);
  // The unpenalized bias goes to the prior logit ln(30 / 10).
  EXPECT_NEAR(m.bias, std::log(3.0), 1e-5);
  EXPECT_NEAR(m.Predict(x[5]), 0.75, 1e-5);
}

TEST(LogisticRegression, PenaltyShrinksWeights) {
  Rows x;
  std::vector<int> y;
  MakeData(100, 8, 5, &x, &y);
  double previous = INFINITY;
  for (double l2 : {0.001, 0.01, 0.1, 1.0, 10.0}) {
    LogisticRegressionConfig config;
    config.l2 = l2;
    const auto m = TrainLogisticRegression(x, y, config);
    double norm = 0.0;
    for (double w : m.weights) norm += w * w;
    EXPECT_LT(norm, previous) << l2;
    previous = norm;
  }
}

TEST(LogisticRegression, Errors) {
  EXPECT_THROW(TrainLogisticRegression({}, {}), ValidationError);
  EXPECT_THROW(TrainLogisticRegression({{1.0}, {2.0}}, {1, 1}), ValidationError);
  EXPECT_THROW(TrainLogisticRegression({{1.0}, {2.0}}, {0, 2}), ValidationError);
  EXPECT_THROW(TrainLogisticRegression({{1.0}, {2.0}}, {0}), ValidationError);
}

TEST(LogisticRegression, CheckpointRoundTrip) {
  Rows x;
  std::vector<int> y;
  MakeData(60, 4, 6, &x, &y);
  const auto m = TrainLogisticRegression(x, y);
  const auto bytes = ToCheckpoint(m).Serialize();
  const auto back =
      LogisticRegressionFromCheckpoint(nn::ModelCheckpoint::Deserialize(bytes, nn::kModelMagic));
  ASSERT_EQ(back.weights.size(), m.weights.size());
  for (std::size_t j = 0; j < m.weights.size(); ++j) {
    EXPECT_EQ(back.weights[j], static_cast<float>(m.weights[j]));
  }
  EXPECT_EQ(back.bias, static_cast<float>(m.bias));
  EXPECT_EQ(back.l2, m.l2);
  for (const auto& r : x) EXPECT_NEAR(back.Predict(r), m.Predict(r), 1e-5);
  // A second trip is exact: the values are already f32.
  EXPECT_EQ(ToCheckpoint(back).Serialize(), bytes);

  nn::ModelCheckpoint other;
  other.SetMeta("architecture", "bow_mlp");
  EXPECT_THROW(LogisticRegressionFromCheckpoint(other), ValidationError);
}

}  // namespace
}  // namespace lukthung::data
