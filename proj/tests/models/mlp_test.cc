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

#include "gtest/gtest.h"
#include "lukthung/errors.h"
#include "lukthung/models/combined.h"
#include "lukthung/models/mlp.h"
#include "lukthung/models/model_io.h"
#include "lukthung/nn/grad_check.h"
#include "test_util.h"

namespace lukthung::models {
namespace {

using testing::RandomTensor;

template <typename Model>
void ZeroParameters(Model& model) {
  for (auto* p : model.Parameters()) p->value.Fill(0);
}

TEST(Mlp, BowShapes) {
  const Mlp<float> mlp(BowMlpDims(500), 1, "bow");
  EXPECT_EQ(mlp.dims(), (std::vector<std::size_t>{500, 100, 100}));
  EXPECT_EQ(mlp.feature_dim(), 100u);
  const auto out = mlp.Forward(nn::Tensor({500}));
  EXPECT_EQ(out.feature.shape(), nn::Shape{100});
  std::vector<std::string> names;
  for (const auto* p : mlp.Parameters()) names.push_back(p->name);
  EXPECT_EQ(names, (std::vector<std::string>{"bow1.weight", "bow1.bias", "bow2.weight",
                                             "bow2.bias", "bow.out.weight",
                                             "bow.out.bias"}));
}

TEST(Mlp, ZeroNetworkGivesHalf) {
  Mlp<float> mlp(BowMlpDims(20), 2);
  ZeroParameters(mlp);
  std::mt19937_64 rng(1);
  EXPECT_EQ(mlp.Forward(RandomTensor<float>({20}, rng)).prob, 0.5f);
}

TEST(Mlp, MatchesMatrixMultiplyOracle) {
  std::mt19937_64 rng(61);
  Mlp<double> mlp({6, 5, 4}, 3);
  for (auto* p : mlp.Parameters()) p->value = RandomTensor<double>(p->value.shape(), rng);
  const auto params = mlp.Parameters();
  for (int trial = 0; trial < 20; ++trial) {
    const nn::TensorD x = RandomTensor<double>({6}, rng);
    std::vector<double> h(x.values().begin(), x.values().end());
    for (std::size_t layer = 0; layer < 3; ++layer) {
      const auto& w = params[2 * layer]->value;
      const auto& b = params[2 * layer + 1]->value;
      std::vector<double> next(w.dim(0));
      for (std::size_t i = 0; i < w.dim(0); ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < w.dim(1); ++j) s += w.at(i, j) * h[j];
        next[i] = layer < 2 ? std::max(s, 0.0) : s;
      }
      if (layer == 2) {
        const auto out = mlp.Forward(x);
        EXPECT_NEAR(out.logit, next[0], 1e-12);
        EXPECT_NEAR(out.prob, 1.0 / (1.0 + std::exp(-next[0])), 1e-12);
        for (std::size_t i = 0; i < h.size(); ++i) {
          EXPECT_NEAR(out.feature[i], h[i], 1e-12);
          EXPECT_GE(out.feature[i], 0.0);
        }
      }
      h = next;
    }
  }
}

TEST(Mlp, GradientCheck) {
  std::mt19937_64 rng(62);
  Mlp<double> mlp({8, 6, 5}, 4);
  const nn::TensorD x = RandomTensor<double>({8}, rng);
  const auto report = nn::GradCheck(
      mlp.Parameters(), [&] { return nn::BceLoss(mlp.Forward(x).prob, 1, 2.0); },
      [&] {
        Mlp<double>::Cache cache;
        const auto out = mlp.Forward(x, &cache);
        mlp.Backward(cache, nn::BceLogitGrad(out.logit, 1, 2.0));
      });
  EXPECT_LT(report.max_relative_error, 1e-6) << report.worst_parameter;
}

TEST(Mlp, InputWidthMismatch) {
  const Mlp<float> mlp(BowMlpDims(10), 1);
  EXPECT_THROW(mlp.Forward(nn::Tensor({11})), ShapeError);
  EXPECT_THROW(Mlp<float>({}, 1), ValidationError);
}

TEST(Mlp, SeedDeterminesInitialization) {
  const Mlp<float> a(BowMlpDims(30), 7), b(BowMlpDims(30), 7), c(BowMlpDims(30), 8);
  EXPECT_EQ(a.Parameters()[0]->value, b.Parameters()[0]->value);
  EXPECT_NE(a.Parameters()[0]->value, c.Parameters()[0]->value);
}

TEST(Combined, WidthsAndZeroNetwork) {
  Combined<float> model(CombinedConfig{}, 1);
  EXPECT_EQ(model.config().input_dim(), 800u);
  EXPECT_EQ(model.config().dims(), (std::vector<std::size_t>{800, 256, 64}));
  ZeroParameters(model);
  EXPECT_EQ(model.Forward(nn::Tensor({100}), nn::Tensor({700})).prob, 0.5f);
}

TEST(Combined, ConcatenatesLyricsThenAudio) {
  std::mt19937_64 rng(63);
  const nn::Tensor lyric = RandomTensor<float>({100}, rng);
  const nn::Tensor audio = RandomTensor<float>({700}, rng);
  const nn::Tensor fused = Combined<float>::Concat(lyric, audio);
  ASSERT_EQ(fused.shape(), nn::Shape{800});
  EXPECT_EQ(fused[0], lyric[0]);
  EXPECT_EQ(fused[99], lyric[99]);
  EXPECT_EQ(fused[100], audio[0]);
  EXPECT_EQ(fused[799], audio[699]);
  const Combined<float> model(CombinedConfig{}, 2);
  EXPECT_EQ(model.Forward(fused).prob, model.Forward(lyric, audio).prob);
}

TEST(Combined, WidthMismatchNamesTheSide) {
  try {
    Combined<float>::Concat(nn::Tensor({99}), nn::Tensor({700}));
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("lyrics"), std::string::npos) << e.what();
  }
  try {
    Combined<float>::Concat(nn::Tensor({100}), nn::Tensor({576}));
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("audio"), std::string::npos) << e.what();
  }
}

TEST(Combined, TrainingStepLeavesBaseModelGradientsZero) {
  // The fusion head only ever sees detached features, so backpropagating its
  // loss cannot reach the lyrics model.
  std::mt19937_64 rng(64);
  Mlp<float> lyrics(BowMlpDims(30), 5);
  const auto lyrics_before = ToCheckpoint(lyrics).Serialize();
  const nn::Tensor bow = RandomTensor<float>({30}, rng, 0.0, 1.0);
  const nn::Tensor audio = RandomTensor<float>({700}, rng);
  Combined<float> head(CombinedConfig{}, 6);
  for (auto* p : lyrics.Parameters()) p->ZeroGrad();
  Combined<float>::Cache cache;
  const auto out = head.Forward(Combined<float>::Concat(lyrics.Forward(bow).feature, audio),
                                &cache);
  head.Backward(cache, static_cast<float>(nn::BceLogitGrad(out.logit, 1)));
  for (const auto* p : lyrics.Parameters()) {
    for (float g : p->grad.values()) ASSERT_EQ(g, 0.0f) << p->name;
  }
  bool head_moved = false;
  for (const auto* p : head.Parameters()) {
    for (float g : p->grad.values()) head_moved |= g != 0.0f;
  }
  EXPECT_TRUE(head_moved);
  EXPECT_EQ(ToCheckpoint(lyrics).Serialize(), lyrics_before);
}

TEST(Combined, GradientCheck) {
  std::mt19937_64 rng(65);
  CombinedConfig config;
  config.lyrics_dim = 4;
  config.audio_dim = 6;
  config.hidden = {5, 3};
  Combined<double> model(config, 7);
  const nn::TensorD x = RandomTensor<double>({10}, rng);
  const auto report = nn::GradCheck(
      model.Parameters(), [&] { return nn::BceLoss(model.Forward(x).prob, 0); },
      [&] {
        Combined<double>::Cache cache;
        const auto out = model.Forward(x, &cache);
        model.Backward(cache, nn::BceLogitGrad(out.logit, 0));
      });
  EXPECT_LT(report.max_relative_error, 1e-6) << report.worst_parameter;
}

}  // namespace
}  // namespace lukthung::models
