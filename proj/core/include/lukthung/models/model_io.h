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

#ifndef LUKTHUNG_MODELS_MODEL_IO_H_
#define LUKTHUNG_MODELS_MODEL_IO_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "lukthung/models/combined.h"
#include "lukthung/models/mlp.h"
#include "lukthung/models/spectro_cnn.h"
#include "lukthung/nn/checkpoint.h"

namespace lukthung::models {

enum class ModelKind { kBowMlp, kSpectroCnn, kCombined };

std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);

// Lyrics BoW-MLP hidden widths; the last one is the exported feature width.
inline constexpr std::size_t kBowHiddenDim = 100;
std::vector<std::size_t> BowMlpDims(std::size_t vocab_size);

std::string MlpDescription(const Mlp<float>& mlp);
// 16 hex chars; equal descriptions mean interchangeable parameter layouts.
std::string ArchitectureHash(std::string_view description);

// Metadata written by every ToCheckpoint:
//   architecture            bow_mlp | spectro_cnn | combined
//   architecture.description, architecture.hash
//   feature_dim             width of the exported feature: the penultimate
//                           layer, or the fused input for combined
//   layers                  parameter names in payload order
// plus the kind's dimensions (for the CNN the filter bank verbatim and its
// timbral/temporal/total channel counts). Callers add their own keys, such
// as config and preprocessing hashes, before saving.
nn::ModelCheckpoint ToCheckpoint(const Mlp<float>& bow_mlp);
nn::ModelCheckpoint ToCheckpoint(const SpectroCnn<float>& cnn);
nn::ModelCheckpoint ToCheckpoint(const Combined<float>& combined);

ModelKind CheckpointKind(const nn::ModelCheckpoint& checkpoint);
std::size_t CheckpointFeatureDim(const nn::ModelCheckpoint& checkpoint);

// Rebuild a model; every tensor must be present with exactly the shape the
// metadata implies. A wrong kind is a ValidationError.
Mlp<float> BowMlpFromCheckpoint(const nn::ModelCheckpoint& checkpoint);
SpectroCnn<float> SpectroCnnFromCheckpoint(const nn::ModelCheckpoint& checkpoint);
Combined<float> CombinedFromCheckpoint(const nn::ModelCheckpoint& checkpoint);

// Throws ValidationError quoting both hashes when the checkpoint was built
// for a different architecture than `expected_description`.
void ExpectArchitecture(const nn::ModelCheckpoint& checkpoint,
                        std::string_view expected_description);

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_MODEL_IO_H_
