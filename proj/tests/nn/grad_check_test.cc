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

// Finite-difference checks of every layer's backward pass in double
// precision. Each layer output is reduced to a scalar with a fixed random
// projection so every output entry contributes to the loss.

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "lukthung/errors.h"
#include "lukthung/nn/grad_check.h"
#include "lukthung/nn/ops.h"
#include "test_util.h"

namespace lukthung::nn {
namespace {

using testing::RandomTensor;

constexpr double kTolerance = 1e-6;

double Project(const TensorD& out, const TensorD& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) s += out[i] * r[i];
  return s;
}

TEST(GradCheck, Dense) {
  std::mt19937_64 rng(21);
  ParameterD x("x", RandomTensor<double>({2}, rng));
  ParameterD w("w", RandomTensor<double>({3, 2}, rng));
  ParameterD b("b", RandomTensor<double>({3}, rng));
  const TensorD r = RandomTensor<double>({3}, rng);
  const auto report = GradCheck(
      {&x, &w, &b}, [&] { return Project(Dense(x.value, w.value, b.value), r); },
      [&] {
        TensorD gx;
        DenseBackward(x.value, w.value, r, &gx, w.grad, b.grad);
        x.grad = gx;
      });
  EXPECT_EQ(report.entries_checked, 2u + 6u + 3u);
  EXPECT_TRUE(report.Passed(kTolerance))
      << report.max_relative_error << " at " << report.worst_parameter;
}

void CheckConv(std::size_t c_in, std::size_t h, std::size_t w_len,
               std::size_t c_out, std::size_t k_h, std::size_t k_w,
               std::size_t sample) {
  std::mt19937_64 rng(22 + k_h * 31 + k_w);
  ParameterD x("x", RandomTensor<double>({c_in, h, w_len}, rng));
  ParameterD w("w", RandomTensor<double>({c_out, c_in, k_h, k_w}, rng, -0.1, 0.1));
  ParameterD b("b", RandomTensor<double>({c_out}, rng));
  const TensorD r = RandomTensor<double>({c_out, h - k_h + 1, w_len}, rng);
  GradCheckOptions options;
  options.max_entries_per_param = sample;
  const auto report = GradCheck(
      {&x, &w, &b}, [&] { return Project(Conv2d(x.value, w.value, b.value), r); },
      [&] {
        TensorD gx;
        Conv2dBackward(x.value, w.value, r, &gx, w.grad, b.grad);
        x.grad = gx;
      },
      options);
  EXPECT_TRUE(report.Passed(kTolerance))
      << report.max_relative_error << " at " << report.worst_parameter;
}

TEST(GradCheck, ConvTimbralFilterOnFullHeightInput) {
  CheckConv(1, 128, 20, 1, 115, 7, 300);
}

TEST(GradCheck, ConvMultiChannel) { CheckConv(3, 6, 13, 4, 2, 5, 0); }

TEST(GradCheck, ConvEvenWidthKernel) { CheckConv(2, 5, 9, 2, 1, 4, 0); }

TEST(GradCheck, ReluAwayFromKink) {
  std::mt19937_64 rng(23);
  ParameterD x("x", RandomTensor<double>({50}, rng));
  for (double& v : x.value.values()) {
    if (std::abs(v) < 1e-2) v = v < 0 ? -0.5 : 0.5;
  }
  const TensorD r = RandomTensor<double>({50}, rng);
  const auto report = GradCheck(
      {&x}, [&] { return Project(Activate(x.value, Activation::kRelu), r); },
      [&] { x.grad = ActivateBackward(x.value, r, Activation::kRelu); });
  EXPECT_TRUE(report.Passed(kTolerance)) << report.max_relative_error;
}

TEST(GradCheck, Sigmoid) {
  std::mt19937_64 rng(24);
  ParameterD x("x", RandomTensor<double>({20}, rng, -6.0, 6.0));
  const TensorD r = RandomTensor<double>({20}, rng);
  const auto report = GradCheck(
      {&x}, [&] { return Project(Activate(x.value, Activation::kSigmoid), r); },
      [&] {
        x.grad = ActivateBackward(Activate(x.value, Activation::kSigmoid), r,
                                  Activation::kSigmoid);
      });
  EXPECT_TRUE(report.Passed(kTolerance)) << report.max_relative_error;
}

TEST(GradCheck, MaxPoolWithUniqueMaxima) {
  std::mt19937_64 rng(25);
  ParameterD x("x", RandomTensor<double>({2, 7, 9}, rng));
  const TensorD r = RandomTensor<double>({2, 1, 9}, rng);
  const auto report = GradCheck(
      {&x}, [&] { return Project(MaxPoolFreq(x.value).output, r); },
      [&] { x.grad = MaxPoolFreqBackward(r, MaxPoolFreq(x.value).argmax, 7); });
  EXPECT_TRUE(report.Passed(kTolerance)) << report.max_relative_error;
}

TEST(GradCheck, FusedConvReluPool) {
  for (auto [k_h, k_w] : {std::pair<std::size_t, std::size_t>{6, 3}, {2, 9}}) {
    std::mt19937_64 rng(26 + k_h);
    ParameterD x("x", RandomTensor<double>({1, 12, 15}, rng));
    ParameterD w("w", RandomTensor<double>({5, 1, k_h, k_w}, rng));
    ParameterD b("b", RandomTensor<double>({5}, rng, 0.5, 1.0));
    const TensorD r = RandomTensor<double>({5, 1, 15}, rng);
    const auto report = GradCheck(
        {&x, &w, &b},
        [&] {
          return Project(ConvReluMaxPoolFreq(x.value, w.value, b.value).output, r);
        },
        [&] {
          const auto fwd = ConvReluMaxPoolFreq(x.value, w.value, b.value);
          TensorD gx;
          ConvReluMaxPoolFreqBackward(x.value, w.value, fwd, r, &gx, w.grad,
                                      b.grad);
          x.grad = gx;
        });
    EXPECT_TRUE(report.Passed(kTolerance))
        << report.max_relative_error << " at " << report.worst_parameter;
  }
}

TEST(GradCheck, DetectsAWrongGradient) {
  ParameterD x("x", TensorD({2}, {1.0, 2.0}));
  const auto report = GradCheck(
      {&x}, [&] { return x.value[0] * x.value[0] + x.value[1]; },
      [&] {
        x.grad[0] = 2.0 * x.value[0];
        x.grad[1] = 0.5;  // should be 1
      });
  EXPECT_FALSE(report.Passed(kTolerance));
  EXPECT_EQ(report.worst_parameter, "x[1]");
  EXPECT_NEAR(report.max_relative_error, 0.5, 1e-6);
}

TEST(GradCheck, NonFiniteAnalyticGradientNamesParameter) {
  ParameterD x("layer.weight", TensorD({1}, {1.0}));
  try {
    GradCheck({&x}, [&] { return x.value[0]; },
              [&] { x.grad[0] = std::numeric_limits<double>::quiet_NaN(); });
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("layer.weight"), std::string::npos);
  }
}

}  // namespace
}  // namespace lukthung::nn
