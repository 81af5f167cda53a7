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

#ifndef LUKTHUNG_TOOLS_MODEL_RUNNER_H_
#define LUKTHUNG_TOOLS_MODEL_RUNNER_H_

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artifacts.h"
#include "lukthung/data/logistic_regression.h"
#include "lukthung/models/model_io.h"
#include "lukthung/nn/checkpoint.h"
#include "run_config.h"

namespace lukthung::cli {

// The trainable model kinds the tool knows; lr_baseline is the MFCC
// logistic-regression reference.
enum class ModelType { kBowMlp, kSpectroCnn, kCombined, kLrBaseline };

std::string_view ModelTypeName(ModelType type);
ModelType ParseModelType(std::string_view name);
// Default checkpoint location: <checkpoint_dir>/<name>.ltnn.
std::filesystem::path DefaultCheckpointPath(const RunConfig& config, ModelType type);

// What a model needs to score one song. `bow` is required for lyrics models;
// `load_audio` is only called when neither the embedding cache nor a
// previous call has the answer.
struct SongData {
  std::string id;
  nn::Tensor bow;
  std::string audio_key;
  std::function<AudioEntry()> load_audio;
};

struct Prediction {
  double prob = 0.0;
  std::vector<float> feature;  // the exported representation
};

// A loaded checkpoint of any kind, ready for read-only inference from many
// threads.
class ModelRunner {
 public:
  // Checks the checkpoint against the current preprocessing: the vocabulary
  // for lyrics models and the spectrogram spec for audio models. A combined
  // checkpoint also loads both base checkpoints from the checkpoint dir and
  // requires their content hashes to match the ones it was trained on.
  // `vocab` describes the bag-of-words inputs that will be fed; it is
  // required for lyrics models.
  struct VocabInfo {
    std::string hash;
    std::size_t size = 0;
  };
  static ModelRunner Load(const std::filesystem::path& path, const RunConfig& config,
                          const std::optional<VocabInfo>& vocab);

  ModelType type() const { return type_; }
  const nn::ModelCheckpoint& checkpoint() const { return checkpoint_; }
  const std::string& checkpoint_hash() const { return checkpoint_hash_; }
  bool uses_lyrics() const { return type_ == ModelType::kBowMlp || type_ == ModelType::kCombined; }
  bool uses_audio() const { return type_ != ModelType::kBowMlp; }
  std::size_t feature_dim() const;

  Prediction Predict(const SongData& song) const;

 private:
  ModelRunner() = default;
  Prediction PredictCnn(const SongData& song) const;

  ModelType type_ = ModelType::kBowMlp;
  nn::ModelCheckpoint checkpoint_;
  std::string checkpoint_hash_;
  std::shared_ptr<const models::Mlp<float>> bow_;
  std::shared_ptr<const models::SpectroCnn<float>> cnn_;
  std::shared_ptr<const models::Combined<float>> head_;
  std::shared_ptr<const data::LogisticRegressionModel> lr_;
  std::shared_ptr<const EmbeddingCache> embeddings_;
};

// Metadata keys written into checkpoints by `train`.
inline constexpr char kMetaConfigHash[] = "config_hash";
inline constexpr char kMetaVocabHash[] = "vocab.hash";
inline constexpr char kMetaSpecHash[] = "spectrogram.hash";
inline constexpr char kMetaBaseBowHash[] = "base.bow_mlp.hash";
inline constexpr char kMetaBaseCnnHash[] = "base.spectro_cnn.hash";

// The CNN configuration implied by a spectrogram spec.
models::SpectroCnnConfig CnnConfigFor(const audio::SpectrogramSpec& spec);

}  // namespace lukthung::cli

#endif  // LUKTHUNG_TOOLS_MODEL_RUNNER_H_
