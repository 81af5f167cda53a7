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

#ifndef LUKTHUNG_TOOLS_RUN_CONFIG_H_
#define LUKTHUNG_TOOLS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lukthung/audio/spectrogram.h"
#include "lukthung/data/split.h"
#include "lukthung/lyrics/tokenizer.h"
#include "lukthung/lyrics/vocabulary.h"
#include "lukthung/models/trainer.h"

namespace lukthung::cli {

// Every setting of a pipeline run. The config file is flat "key = value"
// text; '#' starts a comment. Keys are listed with their defaults by
// `lukthung config-defaults`.
struct RunConfig {
  // Locations. These do not enter the config hash.
  std::string manifest;
  std::string artifacts_dir = "lukthung-out";
  std::string vocab;            // default <artifacts_dir>/vocab.tsv
  std::string lyrics_features;  // default <artifacts_dir>/lyrics.ltbw
  std::string checkpoint_dir;   // default <artifacts_dir>/checkpoints
  std::string cache_dir;        // default <artifacts_dir>/cache; LT_CACHE_DIR wins
  std::size_t workers = 0;      // 0 = logical cores

  // Preprocessing.
  lyrics::TokenizeMode tokenize_mode = lyrics::TokenizeMode::kPretokenized;
  lyrics::VocabularyOptions vocab_options;
  audio::SpectrogramSpec spectrogram;

  // Data split and training.
  data::SplitRatios split;
  double lr = 1e-3;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 100;
  std::size_t cnn_max_epochs = 0;  // 0 = max_epochs
  std::size_t patience = 10;
  double pos_weight = 0.0;  // 0 = N_neg / N_pos of the training split
  std::uint64_t seed = 42;
  double threshold = 0.5;
  double lr_baseline_l2 = -1.0;  // negative = 1 / N_train

  // Throws ValidationError naming the key on an out-of-range value.
  void Validate() const;

  std::filesystem::path VocabPath() const;
  std::filesystem::path LyricsFeaturesPath() const;
  std::filesystem::path CheckpointDir() const;
  // LT_CACHE_DIR, then cache_dir, then <artifacts_dir>/cache.
  std::filesystem::path CacheDir() const;
  std::size_t Workers() const;

  models::TrainConfig Training(bool cnn) const;

  // All keys with their current values, in documentation order.
  std::vector<std::pair<std::string, std::string>> Entries() const;
  // "key=value" lines of the keys that change results (not locations).
  std::string Canonical() const;
  std::uint64_t Hash() const;
  std::string HashHex() const;
};

// Applies `text` on top of `base`. Errors carry the 1-based line number;
// unknown and repeated keys are errors.
RunConfig ParseRunConfig(std::string_view text, RunConfig base = {});
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Sets one key from its textual value (used by the parser and by flags).
void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value);

// The default config as a commented file, one key per line.
std::string DefaultConfigText();

}  // namespace lukthung::cli

#endif  // LUKTHUNG_TOOLS_RUN_CONFIG_H_
