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

#ifndef LUKTHUNG_TOOLS_COMMANDS_H_
#define LUKTHUNG_TOOLS_COMMANDS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "run_config.h"

namespace lukthung::cli {

// Where a command writes. Machine-readable results go to `out` (or to the
// --out file); progress goes to `log`.
struct Context {
  RunConfig config;
  std::ostream& out;
  std::ostream& log;
};

struct GenSynthOptions {
  std::filesystem::path out_dir;
  std::size_t n_per_class = 600;
  // "train,val,test" per class, or empty for no preset split.
  std::string split_per_class = "400,100,100";
};
void GenSynth(Context& ctx, const GenSynthOptions& options);

struct BuildVocabOptions {
  std::vector<std::filesystem::path> extra_lyrics;  // directories of unlabeled lyrics
  std::filesystem::path out;                        // default: config vocab path
};
void BuildVocab(Context& ctx, const BuildVocabOptions& options);

void FeaturizeAudio(Context& ctx);

struct FeaturizeLyricsOptions {
  std::filesystem::path out;  // default: config lyrics_features path
};
void FeaturizeLyrics(Context& ctx, const FeaturizeLyricsOptions& options);

struct TrainOptions {
  std::string model;
  std::filesystem::path out;  // default: <checkpoint_dir>/<model>.ltnn
};
void Train(Context& ctx, const TrainOptions& options);

// Shared by evaluate, predict and export-features.
struct InferenceOptions {
  std::filesystem::path checkpoint;  // or derived from `model`
  std::string model;
  std::string split = "test";  // train, val, test or all
  std::filesystem::path out;
  bool force = false;
};
void Evaluate(Context& ctx, const InferenceOptions& options);

struct PredictOptions {
  InferenceOptions inference;
  // Single-song mode when either is set.
  std::filesystem::path audio;
  std::filesystem::path lyrics;
};
void Predict(Context& ctx, const PredictOptions& options);

struct ExportOptions {
  InferenceOptions inference;
  std::size_t top_k = 0;  // 0 = every song, otherwise confidence groups
};
void ExportFeatures(Context& ctx, const ExportOptions& options);

}  // namespace lukthung::cli

#endif  // LUKTHUNG_TOOLS_COMMANDS_H_
