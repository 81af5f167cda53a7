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

#include "model_runner.h"

#include "lukthung/audio/features.h"
#include "lukthung/errors.h"
#include "lukthung/hash.h"

namespace lukthung::cli {
namespace {

void ExpectMeta(const nn::ModelCheckpoint& c, const char* key, const std::string& expected,
                const std::string& what, const std::filesystem::path& path) {
  const std::string found = c.HasMeta(key) ? c.Meta(key) : "(none)";
  if (found != expected) {
    throw ValidationError(what + " mismatch for " + path.string() + ": checkpoint hash " +
                          found + ", current hash " + expected);
  }
}

std::vector<float> ToVector(const nn::Tensor& t) { return {t.values().begin(), t.values().end()}; }

nn::ModelCheckpoint LoadCheckpoint(const std::filesystem::path& path, const std::string& what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError(what + " " + path.string(), "run train --model " + what + " first");
  }
  return nn::ModelCheckpoint::Load(path, nn::kModelMagic);
}

}  // namespace

std::string_view ModelTypeName(ModelType type) {
  switch (type) {
    case ModelType::kBowMlp:
      return "bow_mlp";
    case ModelType::kSpectroCnn:
      return "spectro_cnn";
    case ModelType::kCombined:
      return "combined";
    case ModelType::kLrBaseline:
      return "lr_baseline";
  }
  return "unknown";
}

ModelType ParseModelType(std::string_view name) {
  for (ModelType t : {ModelType::kBowMlp, ModelType::kSpectroCnn, ModelType::kCombined,
                      ModelType::kLrBaseline}) {
    if (name == ModelTypeName(t)) return t;
  }
  throw ValidationError("unknown model '" + std::string(name) +
                        "' (bow_mlp, spectro_cnn, combined or lr_baseline)");
}

std::filesystem::path DefaultCheckpointPath(const RunConfig& config, ModelType type) {
  return config.CheckpointDir() / (std::string(ModelTypeName(type)) + ".ltnn");
}

models::SpectroCnnConfig CnnConfigFor(const audio::SpectrogramSpec& spec) {
  models::SpectroCnnConfig c;
  c.input_bins = static_cast<std::size_t>(spec.n_mels);
  c.input_frames = spec.FramesFor(spec.clip_samples());
  return c;
}

ModelRunner ModelRunner::Load(const std::filesystem::path& path, const RunConfig& config,
                              const std::optional<VocabInfo>& vocab) {
  ModelRunner r;
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError("checkpoint " + path.string(), "run train first or pass --checkpoint");
  }
  const auto bytes = nn::ReadFileBytes(path);
  r.checkpoint_ = nn::ModelCheckpoint::Deserialize(bytes, nn::kModelMagic);
  r.checkpoint_hash_ = HashToHex(HashBytes(std::as_bytes(std::span(bytes))));
  r.type_ = ParseModelType(r.checkpoint_.Meta("architecture"));
  const nn::ModelCheckpoint& c = r.checkpoint_;
  const std::string spec_hash = HashToHex(config.spectrogram.Hash());

  const auto load_bow = [&](const nn::ModelCheckpoint& ckpt, const std::filesystem::path& p) {
    if (!vocab) throw MissingInputError("vocabulary for " + p.string(), "run build-vocab");
    ExpectMeta(ckpt, kMetaVocabHash, vocab->hash, "vocabulary", p);
    models::ExpectArchitecture(
        ckpt, models::MlpDescription(models::Mlp<float>(models::BowMlpDims(vocab->size), 0)));
    return std::make_shared<const models::Mlp<float>>(models::BowMlpFromCheckpoint(ckpt));
  };
  const auto load_cnn = [&](const nn::ModelCheckpoint& ckpt, const std::filesystem::path& p,
                            const std::string& hash) {
    ExpectMeta(ckpt, kMetaSpecHash, spec_hash, "spectrogram spec", p);
    models::ExpectArchitecture(ckpt, CnnConfigFor(config.spectrogram).Describe());
    r.embeddings_ = std::make_shared<const EmbeddingCache>(config.CacheDir(), hash);
    return std::make_shared<const models::SpectroCnn<float>>(
        models::SpectroCnnFromCheckpoint(ckpt));
  };

  switch (r.type_) {
    case ModelType::kBowMlp:
      r.bow_ = load_bow(c, path);
      break;
    case ModelType::kSpectroCnn:
      r.cnn_ = load_cnn(c, path, r.checkpoint_hash_);
      break;
    case ModelType::kLrBaseline:
      ExpectMeta(c, kMetaSpecHash, spec_hash, "spectrogram spec", path);
      r.lr_ = std::make_shared<const data::LogisticRegressionModel>(
          data::LogisticRegressionFromCheckpoint(c));
      if (r.lr_->weights.size() != 2 * audio::kMfccCoefficients) {
        throw ValidationError("lr_baseline checkpoint expects " +
                              std::to_string(r.lr_->weights.size()) + " inputs, MFCC stats have " +
                              std::to_string(2 * audio::kMfccCoefficients));
      }
      break;
    case ModelType::kCombined: {
      models::ExpectArchitecture(c, models::CombinedConfig{}.Describe());
      const auto bow_path = DefaultCheckpointPath(config, ModelType::kBowMlp);
      const auto cnn_path = DefaultCheckpointPath(config, ModelType::kSpectroCnn);
      const auto bow_bytes = LoadCheckpoint(bow_path, "bow_mlp").Serialize();
      const auto cnn_bytes = LoadCheckpoint(cnn_path, "spectro_cnn").Serialize();
      const std::string bow_hash = FileHash(bow_path);
      const std::string cnn_hash = FileHash(cnn_path);
      ExpectMeta(c, kMetaBaseBowHash, bow_hash, "base bow_mlp checkpoint", bow_path);
      ExpectMeta(c, kMetaBaseCnnHash, cnn_hash, "base spectro_cnn checkpoint", cnn_path);
      r.bow_ = load_bow(nn::ModelCheckpoint::Deserialize(bow_bytes, nn::kModelMagic), bow_path);
      r.cnn_ = load_cnn(nn::ModelCheckpoint::Deserialize(cnn_bytes, nn::kModelMagic), cnn_path,
                        cnn_hash);
      r.head_ = std::make_shared<const models::Combined<float>>(models::CombinedFromCheckpoint(c));
      break;
    }
  }
  return r;
}

std::size_t ModelRunner::feature_dim() const {
  switch (type_) {
    case ModelType::kBowMlp:
      return bow_->feature_dim();
    case ModelType::kSpectroCnn:
      return cnn_->config().feature_dim;
    case ModelType::kCombined:
      return head_->config().input_dim();
    case ModelType::kLrBaseline:
      return lr_->weights.size();
  }
  return 0;
}

Prediction ModelRunner::PredictCnn(const SongData& song) const {
  if (!song.audio_key.empty()) {
    if (auto hit = embeddings_->Find(song.audio_key)) {
      return {hit->prob, ToVector(hit->feature)};
    }
  }
  const AudioEntry audio = song.load_audio();
  const auto out = cnn_->Forward(audio.mel);
  embeddings_->Store(audio.key, {out.prob, out.logit, out.feature});
  return {out.prob, ToVector(out.feature)};
}

Prediction ModelRunner::Predict(const SongData& song) const {
  switch (type_) {
    case ModelType::kBowMlp: {
      const auto out = bow_->Forward(song.bow);
      return {out.prob, ToVector(out.feature)};
    }
    case ModelType::kSpectroCnn:
      return PredictCnn(song);
    case ModelType::kCombined: {
      const nn::Tensor lyric = bow_->Forward(song.bow).feature;
      const Prediction audio = PredictCnn(song);
      const nn::Tensor fused = models::Combined<float>::Concat(
          lyric, nn::Tensor({audio.feature.size()}, audio.feature), head_->config());
      return {head_->Forward(fused).prob, ToVector(fused)};
    }
    case ModelType::kLrBaseline: {
      const AudioEntry audio = song.load_audio();
      const std::vector<double> row(audio.mfcc_stats.values().begin(),
                                    audio.mfcc_stats.values().end());
      const std::vector<double> z = lr_->standardizer.Apply(row);
      return {lr_->Predict(row), std::vector<float>(z.begin(), z.end())};
    }
  }
  throw ValidationError("unreachable model type");
}

}  // namespace lukthung::cli
