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

#include "lukthung/models/model_io.h"

#include <charconv>

#include "lukthung/errors.h"
#include "lukthung/hash.h"

namespace lukthung::models {
namespace {

constexpr char kArchitecture[] = "architecture";
constexpr char kDescription[] = "architecture.description";
constexpr char kHash[] = "architecture.hash";

std::string JoinDims(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t d : dims) {
    if (!out.empty()) out += ",";
    out += std::to_string(d);
  }
  return out;
}

std::size_t ParseSize(const std::string& text, const std::string& key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CorruptInputError("checkpoint metadata " + key + "='" + text +
                            "' is not a non-negative integer");
  }
  return v;
}

std::vector<std::size_t> ParseDims(const std::string& text, const std::string& key) {
  std::vector<std::size_t> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    dims.push_back(ParseSize(text.substr(start, end - start), key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

std::size_t MetaSize(const nn::ModelCheckpoint& ckpt, const std::string& key) {
  return ParseSize(ckpt.Meta(key), key);
}

template <typename Params>
nn::ModelCheckpoint Build(ModelKind kind, const std::string& description,
                          std::size_t feature_dim, const Params& params) {
  nn::ModelCheckpoint ckpt{std::string(nn::kModelMagic)};
  ckpt.SetMeta(kArchitecture, std::string(ModelKindName(kind)));
  ckpt.SetMeta(kDescription, description);
  ckpt.SetMeta(kHash, ArchitectureHash(description));
  ckpt.SetMeta("feature_dim", std::to_string(feature_dim));
  std::string layers;
  for (const auto* p : params) {
    if (!layers.empty()) layers += ",";
    layers += p->name;
    ckpt.AddTensor(p->name, p->value);
  }
  ckpt.SetMeta("layers", layers);
  return ckpt;
}

void ExpectKind(const nn::ModelCheckpoint& ckpt, ModelKind kind) {
  const ModelKind found = CheckpointKind(ckpt);
  if (found != kind) {
    throw ValidationError("checkpoint holds a " + std::string(ModelKindName(found)) +
                          " model, expected " + std::string(ModelKindName(kind)));
  }
}

template <typename Model>
void LoadInto(const nn::ModelCheckpoint& ckpt, Model& model,
              const std::string& description) {
  ExpectArchitecture(ckpt, description);
  for (auto* p : model.Parameters()) {
    p->value = ckpt.TensorChecked(p->name, p->value.shape());
  }
  if (ckpt.tensors().size() != model.Parameters().size()) {
    throw CorruptInputError("checkpoint has " + std::to_string(ckpt.tensors().size()) +
                            " tensors, architecture needs " +
                            std::to_string(model.Parameters().size()));
  }
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kBowMlp:
      return "bow_mlp";
    case ModelKind::kSpectroCnn:
      return "spectro_cnn";
    case ModelKind::kCombined:
      return "combined";
  }
  return "unknown";
}

ModelKind ParseModelKind(std::string_view name) {
  for (ModelKind k : {ModelKind::kBowMlp, ModelKind::kSpectroCnn, ModelKind::kCombined}) {
    if (ModelKindName(k) == name) return k;
  }
  throw ValidationError("unknown model '" + std::string(name) +
                        "' (expected bow_mlp, spectro_cnn or combined)");
}

std::vector<std::size_t> BowMlpDims(std::size_t vocab_size) {
  return {vocab_size, kBowHiddenDim, kBowHiddenDim};
}

std::string MlpDescription(const Mlp<float>& mlp) {
  return "mlp;dims=" + JoinDims(mlp.dims());
}

std::string ArchitectureHash(std::string_view description) {
  return HashToHex(HashString(description));
}

nn::ModelCheckpoint ToCheckpoint(const Mlp<float>& bow_mlp) {
  auto ckpt = Build(ModelKind::kBowMlp, MlpDescription(bow_mlp), bow_mlp.feature_dim(),
                    bow_mlp.Parameters());
  ckpt.SetMeta("dims", JoinDims(bow_mlp.dims()));
  return ckpt;
}

nn::ModelCheckpoint ToCheckpoint(const SpectroCnn<float>& cnn) {
  const SpectroCnnConfig& c = cnn.config();
  auto ckpt = Build(ModelKind::kSpectroCnn, c.Describe(), c.feature_dim, cnn.Parameters());
  ckpt.SetMeta("input_bins", std::to_string(c.input_bins));
  ckpt.SetMeta("input_frames", std::to_string(c.input_frames));
  ckpt.SetMeta("filter_bank", c.filter_bank.ToString());
  ckpt.SetMeta("channels.timbral",
               std::to_string(c.filter_bank.ChannelsOf(FilterKind::kTimbral)));
  ckpt.SetMeta("channels.temporal",
               std::to_string(c.filter_bank.ChannelsOf(FilterKind::kTemporal)));
  ckpt.SetMeta("channels.total", std::to_string(c.channels()));
  ckpt.SetMeta("residual_layers", std::to_string(c.residual_layers));
  ckpt.SetMeta("residual_kernel", std::to_string(c.residual_kernel));
  return ckpt;
}

nn::ModelCheckpoint ToCheckpoint(const Combined<float>& combined) {
  const CombinedConfig& c = combined.config();
  // The exported representation of the fusion model is its input, the
  // concatenated base-model features.
  auto ckpt = Build(ModelKind::kCombined, c.Describe(), c.input_dim(),
                    combined.Parameters());
  ckpt.SetMeta("lyrics_dim", std::to_string(c.lyrics_dim));
  ckpt.SetMeta("audio_dim", std::to_string(c.audio_dim));
  ckpt.SetMeta("hidden", JoinDims(c.hidden));
  return ckpt;
}

ModelKind CheckpointKind(const nn::ModelCheckpoint& checkpoint) {
  return ParseModelKind(checkpoint.Meta(kArchitecture));
}

std::size_t CheckpointFeatureDim(const nn::ModelCheckpoint& checkpoint) {
  return MetaSize(checkpoint, "feature_dim");
}

Mlp<float> BowMlpFromCheckpoint(const nn::ModelCheckpoint& checkpoint) {
  ExpectKind(checkpoint, ModelKind::kBowMlp);
  Mlp<float> mlp(ParseDims(checkpoint.Meta("dims"), "dims"), 0);
  LoadInto(checkpoint, mlp, MlpDescription(mlp));
  return mlp;
}

SpectroCnn<float> SpectroCnnFromCheckpoint(const nn::ModelCheckpoint& checkpoint) {
  ExpectKind(checkpoint, ModelKind::kSpectroCnn);
  SpectroCnnConfig c;
  c.input_bins = MetaSize(checkpoint, "input_bins");
  c.input_frames = MetaSize(checkpoint, "input_frames");
  c.filter_bank = FilterBankSpec::Parse(checkpoint.Meta("filter_bank"));
  c.residual_layers = MetaSize(checkpoint, "residual_layers");
  c.residual_kernel = MetaSize(checkpoint, "residual_kernel");
  c.feature_dim = MetaSize(checkpoint, "feature_dim");
  SpectroCnn<float> cnn(c, 0);
  LoadInto(checkpoint, cnn, c.Describe());
  return cnn;
}

Combined<float> CombinedFromCheckpoint(const nn::ModelCheckpoint& checkpoint) {
  ExpectKind(checkpoint, ModelKind::kCombined);
  CombinedConfig c;
  c.lyrics_dim = MetaSize(checkpoint, "lyrics_dim");
  c.audio_dim = MetaSize(checkpoint, "audio_dim");
  c.hidden = ParseDims(checkpoint.Meta("hidden"), "hidden");
  Combined<float> combined(c, 0);
  LoadInto(checkpoint, combined, c.Describe());
  return combined;
}

void ExpectArchitecture(const nn::ModelCheckpoint& checkpoint,
                        std::string_view expected_description) {
  const std::string expected = ArchitectureHash(expected_description);
  const std::string& found = checkpoint.Meta(kHash);
  if (found != expected) {
    throw ValidationError("architecture mismatch: checkpoint hash " + found + " (" +
                          checkpoint.Meta(kDescription) + "), expected hash " +
                          expected + " (" + std::string(expected_description) + ")");
  }
}

}  // namespace lukthung::models
