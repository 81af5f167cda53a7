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

#include <random>

#include "gtest/gtest.h"
#include "lukthung/errors.h"
#include "lukthung/models/model_io.h"
#include "test_util.h"

namespace lukthung::models {
namespace {

using testing::RandomTensor;

TEST(ModelKind, Names) {
  EXPECT_EQ(ParseModelKind("bow_mlp"), ModelKind::kBowMlp);
  EXPECT_EQ(ParseModelKind("spectro_cnn"), ModelKind::kSpectroCnn);
  EXPECT_EQ(ParseModelKind("combined"), ModelKind::kCombined);
  EXPECT_EQ(ModelKindName(ModelKind::kSpectroCnn), "spectro_cnn");
  EXPECT_THROW(ParseModelKind("svm"), ValidationError);
}

TEST(ModelIo, BowMlpRoundTrip) {
  const Mlp<float> mlp(BowMlpDims(40), 1);
  const nn::ModelCheckpoint ckpt =
      nn::ModelCheckpoint::Deserialize(ToCheckpoint(mlp).Serialize(), nn::kModelMagic);
  EXPECT_EQ(CheckpointKind(ckpt), ModelKind::kBowMlp);
  EXPECT_EQ(CheckpointFeatureDim(ckpt), 100u);
  EXPECT_EQ(ckpt.Meta("dims"), "40,100,100");
  const Mlp<float> loaded = BowMlpFromCheckpoint(ckpt);
  std::mt19937_64 rng(81);
  const nn::Tensor x = RandomTensor<float>({40}, rng, 0.0, 1.0);
  EXPECT_EQ(loaded.Forward(x).prob, mlp.Forward(x).prob);
  EXPECT_EQ(ToCheckpoint(loaded).Serialize(), ToCheckpoint(mlp).Serialize());
}

TEST(ModelIo, SpectroCnnRoundTripRecordsTheFilterBank) {
  const SpectroCnn<float> cnn(SpectroCnnConfig{}, 2);
  const nn::ModelCheckpoint ckpt = ToCheckpoint(cnn);
  EXPECT_EQ(CheckpointKind(ckpt), ModelKind::kSpectroCnn);
  EXPECT_EQ(CheckpointFeatureDim(ckpt), 700u);
  EXPECT_EQ(ckpt.Meta("filter_bank"), FilterBankSpec::Default().ToString());
  EXPECT_EQ(ckpt.Meta("channels.timbral"), "448");
  EXPECT_EQ(ckpt.Meta("channels.temporal"), "128");
  EXPECT_EQ(ckpt.Meta("channels.total"), "576");
  EXPECT_EQ(ckpt.Meta("input_bins"), "128");
  EXPECT_EQ(ckpt.Meta("input_frames"), "431");
  const SpectroCnn<float> loaded = SpectroCnnFromCheckpoint(ckpt);
  std::mt19937_64 rng(82);
  const nn::Tensor x = RandomTensor<float>({128, 431}, rng);
  EXPECT_EQ(loaded.Forward(x).prob, cnn.Forward(x).prob);
}

TEST(ModelIo, TruncatedCnnRoundTrip) {
  const SpectroCnn<float> cnn(SpectroCnnConfig::Truncated(), 3);
  const SpectroCnn<float> loaded = SpectroCnnFromCheckpoint(ToCheckpoint(cnn));
  EXPECT_EQ(loaded.config().Describe(), cnn.config().Describe());
  EXPECT_EQ(ToCheckpoint(loaded).Serialize(), ToCheckpoint(cnn).Serialize());
}

TEST(ModelIo, CombinedRoundTrip) {
  const Combined<float> model(CombinedConfig{}, 4);
  const nn::ModelCheckpoint ckpt = ToCheckpoint(model);
  EXPECT_EQ(CheckpointKind(ckpt), ModelKind::kCombined);
  EXPECT_EQ(CheckpointFeatureDim(ckpt), 800u);
  EXPECT_EQ(ckpt.Meta("hidden"), "256,64");
  EXPECT_EQ(ckpt.Meta("lyrics_dim"), "100");
  EXPECT_EQ(ckpt.Meta("audio_dim"), "700");
  const Combined<float> loaded = CombinedFromCheckpoint(ckpt);
  std::mt19937_64 rng(83);
  const nn::Tensor x = RandomTensor<float>({800}, rng);
  EXPECT_EQ(loaded.Forward(x).prob, model.Forward(x).prob);
}

TEST(ModelIo, WrongKindIsRejected) {
  const nn::ModelCheckpoint bow = ToCheckpoint(Mlp<float>(BowMlpDims(10), 1));
  EXPECT_THROW(SpectroCnnFromCheckpoint(bow), ValidationError);
  EXPECT_THROW(CombinedFromCheckpoint(bow), ValidationError);
  const nn::ModelCheckpoint combined = ToCheckpoint(Combined<float>(CombinedConfig{}, 1));
  EXPECT_THROW(BowMlpFromCheckpoint(combined), ValidationError);
}

TEST(ModelIo, ArchitectureMismatchQuotesBothHashes) {
  const nn::ModelCheckpoint ckpt = ToCheckpoint(Mlp<float>(BowMlpDims(10), 1));
  const std::string other = "mlp;dims=11,100,100";
  try {
    ExpectArchitecture(ckpt, other);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(ckpt.Meta("architecture.hash")), std::string::npos) << what;
    EXPECT_NE(what.find(ArchitectureHash(other)), std::string::npos) << what;
  }
  EXPECT_NO_THROW(ExpectArchitecture(ckpt, "mlp;dims=10,100,100"));
}

TEST(ModelIo, TamperedTensorShapeIsRejected) {
  const nn::ModelCheckpoint good = ToCheckpoint(Mlp<float>(BowMlpDims(10), 1));
  nn::ModelCheckpoint bad;
  for (const auto& [key, value] : good.metadata()) bad.SetMeta(key, value);
  for (const auto& t : good.tensors()) {
    bad.AddTensor(t.name, t.name == "dense1.bias" ? nn::Tensor({99}) : t.value);
  }
  EXPECT_THROW(BowMlpFromCheckpoint(bad), ShapeError);
}

TEST(ModelIo, ArchitectureHashIsStable) {
  EXPECT_EQ(ArchitectureHash("mlp;dims=1"), ArchitectureHash("mlp;dims=1"));
  EXPECT_EQ(ArchitectureHash("mlp;dims=1").size(), 16u);
  EXPECT_NE(ArchitectureHash("mlp;dims=1"), ArchitectureHash("mlp;dims=2"));
}

}  // namespace
}  // namespace lukthung::models
