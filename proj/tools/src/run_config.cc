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

#include "run_config.h"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <set>
#include <system_error>

#include "lukthung/errors.h"
#include "lukthung/hash.h"
#include "lukthung/nn/checkpoint.h"
#include "lukthung/parallel.h"

namespace lukthung::cli {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

template <typename V>
V ParseNumber(std::string_view key, std::string_view text) {
  V v{};
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw ValidationError("config key '" + std::string(key) + "': '" + std::string(text) +
                          "' is not a valid number");
  }
  return v;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Key {
  const char* name;
  const char* doc;
  bool hashed;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename V>
Key Number(const char* name, const char* doc, bool hashed, V RunConfig::*field) {
  return {name, doc, hashed,
          [name, field](RunConfig& c, std::string_view v) { c.*field = ParseNumber<V>(name, v); },
          [field](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<V>) {
              return FormatDouble(c.*field);
            } else {
              return std::to_string(c.*field);
            }
          }};
}

template <typename S, typename V>
Key Nested(const char* name, const char* doc, S RunConfig::*outer, V S::*field) {
  return {name, doc, true,
          [name, outer, field](RunConfig& c, std::string_view v) {
            (c.*outer).*field = ParseNumber<V>(name, v);
          },
          [outer, field](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<V>) {
              return FormatDouble((c.*outer).*field);
            } else {
              return std::to_string((c.*outer).*field);
            }
          }};
}

Key Text(const char* name, const char* doc, std::string RunConfig::*field) {
  return {name, doc, false,
          [field](RunConfig& c, std::string_view v) { c.*field = std::string(v); },
          [field](const RunConfig& c) { return c.*field; }};
}

const std::vector<Key>& Keys() {
  using A = audio::SpectrogramSpec;
  using S = data::SplitRatios;
  using V = lyrics::VocabularyOptions;
  static const std::vector<Key> keys = {
      Text("manifest", "song manifest (JSON lines)", &RunConfig::manifest),
      Text("artifacts_dir", "root for artifacts whose path is not set", &RunConfig::artifacts_dir),
      Text("vocab", "vocabulary file; empty = <artifacts_dir>/vocab.tsv", &RunConfig::vocab),
      Text("lyrics_features", "bag-of-words file; empty = <artifacts_dir>/lyrics.ltbw",
           &RunConfig::lyrics_features),
      Text("checkpoint_dir", "model checkpoints; empty = <artifacts_dir>/checkpoints",
           &RunConfig::checkpoint_dir),
      Text("cache_dir", "feature cache; empty = <artifacts_dir>/cache (LT_CACHE_DIR overrides)",
           &RunConfig::cache_dir),
      Number("workers", "featurization threads; 0 = logical cores", false, &RunConfig::workers),
      {"tokenize_mode", "pretokenized ('|'-joined) or whitespace", true,
       [](RunConfig& c, std::string_view v) { c.tokenize_mode = lyrics::ParseTokenizeMode(v); },
       [](const RunConfig& c) { return std::string(lyrics::TokenizeModeName(c.tokenize_mode)); }},
      Nested("vocab_min_count", "drop tokens seen fewer times", &RunConfig::vocab_options,
             &V::min_count),
      Nested("vocab_max_token_chars", "drop tokens with more code points",
             &RunConfig::vocab_options, &V::max_token_chars),
      Nested("sample_rate", "analysis rate in Hz", &RunConfig::spectrogram, &A::sample_rate),
      Nested("n_fft", "FFT size (power of two)", &RunConfig::spectrogram, &A::n_fft),
      Nested("hop", "STFT hop in samples", &RunConfig::spectrogram, &A::hop),
      Nested("n_mels", "mel bands", &RunConfig::spectrogram, &A::n_mels),
      Nested("fmin", "lowest mel edge in Hz", &RunConfig::spectrogram, &A::fmin),
      Nested("fmax", "highest mel edge in Hz", &RunConfig::spectrogram, &A::fmax),
      Nested("clip_seconds", "excerpt length", &RunConfig::spectrogram, &A::clip_seconds),
      Nested("chorus_fraction", "excerpt start as a fraction of the song",
             &RunConfig::spectrogram, &A::chorus_fraction),
      Nested("split_train", "train share for songs without a preset split", &RunConfig::split,
             &S::train),
      Nested("split_val", "validation share", &RunConfig::split, &S::val),
      Nested("split_test", "test share", &RunConfig::split, &S::test),
      Number("lr", "Adam learning rate", true, &RunConfig::lr),
      Number("batch_size", "minibatch size", true, &RunConfig::batch_size),
      Number("max_epochs", "epoch cap", true, &RunConfig::max_epochs),
      Number("cnn_max_epochs", "epoch cap for spectro_cnn; 0 = max_epochs", true,
             &RunConfig::cnn_max_epochs),
      Number("patience", "epochs without validation F1 gain before stopping", true,
             &RunConfig::patience),
      Number("pos_weight", "positive-class loss weight; 0 = N_neg / N_pos", true,
             &RunConfig::pos_weight),
      Number("seed", "seed for splits, initialization and shuffling", true, &RunConfig::seed),
      Number("threshold", "probability at or above which a song is lukthung", true,
             &RunConfig::threshold),
      Number("lr_baseline_l2", "L2 strength of the MFCC baseline; negative = 1 / N_train", true,
             &RunConfig::lr_baseline_l2),
  };
  return keys;
}

const Key& FindKey(std::string_view name) {
  for (const Key& k : Keys()) {
    if (name == k.name) return k;
  }
  throw ValidationError("unknown config key '" + std::string(name) + "'");
}

}  // namespace

void RunConfig::Validate() const {
  spectrogram.Validate();
  SplitSizesFor(0, split);  // throws unless the ratios sum to 1
  if (!(lr > 0.0)) throw ValidationError("config key 'lr' must be positive");
  if (batch_size == 0) throw ValidationError("config key 'batch_size' must be positive");
  if (max_epochs == 0) throw ValidationError("config key 'max_epochs' must be positive");
  if (patience == 0) throw ValidationError("config key 'patience' must be positive");
  if (!(pos_weight >= 0.0)) throw ValidationError("config key 'pos_weight' must be >= 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("config key 'threshold' must lie in [0, 1]");
  }
  if (vocab_options.min_count == 0 || vocab_options.max_token_chars == 0) {
    throw ValidationError("vocabulary thresholds must be positive");
  }
}

std::filesystem::path RunConfig::VocabPath() const {
  return vocab.empty() ? std::filesystem::path(artifacts_dir) / "vocab.tsv"
                       : std::filesystem::path(vocab);
}

std::filesystem::path RunConfig::LyricsFeaturesPath() const {
  return lyrics_features.empty() ? std::filesystem::path(artifacts_dir) / "lyrics.ltbw"
                                 : std::filesystem::path(lyrics_features);
}

std::filesystem::path RunConfig::CheckpointDir() const {
  return checkpoint_dir.empty() ? std::filesystem::path(artifacts_dir) / "checkpoints"
                                : std::filesystem::path(checkpoint_dir);
}

std::filesystem::path RunConfig::CacheDir() const {
  if (const char* env = std::getenv("LT_CACHE_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return cache_dir.empty() ? std::filesystem::path(artifacts_dir) / "cache"
                           : std::filesystem::path(cache_dir);
}

std::size_t RunConfig::Workers() const { return workers == 0 ? DefaultWorkers() : workers; }

models::TrainConfig RunConfig::Training(bool cnn) const {
  models::TrainConfig t;
  t.adam.lr = lr;
  t.batch_size = batch_size;
  t.max_epochs = cnn && cnn_max_epochs != 0 ? cnn_max_epochs : max_epochs;
  t.patience = patience;
  t.pos_weight = pos_weight;
  t.seed = seed;
  t.threshold = threshold;
  t.workers = Workers();
  return t;
}

std::vector<std::pair<std::string, std::string>> RunConfig::Entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : Keys()) out.emplace_back(k.name, k.get(*this));
  return out;
}

std::string RunConfig::Canonical() const {
  std::string out;
  for (const Key& k : Keys()) {
    if (!k.hashed) continue;
    out += k.name;
    out += '=';
    out += k.get(*this);
    out += '\n';
  }
  return out;
}

std::uint64_t RunConfig::Hash() const { return HashString(Canonical()); }
std::string RunConfig::HashHex() const { return HashToHex(Hash()); }

void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value) {
  FindKey(key).set(config, value);
}

RunConfig ParseRunConfig(std::string_view text, RunConfig base) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(where + "expected key = value, got '" + std::string(line) + "'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError(where + "missing key");
    try {
      SetConfigValue(base, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(where + "key '" + std::string(key) + "' set twice");
    }
  }
  return base;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw MissingInputError("config file " + path.string(), "check --config");
  }
  const auto bytes = nn::ReadFileBytes(path);
  return ParseRunConfig(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string DefaultConfigText() {
  const RunConfig defaults;
  std::string out = "# lukthung run configuration (defaults)\n";
  for (const Key& k : Keys()) {
    out += "\n# ";
    out += k.doc;
    out += "\n";
    out += k.name;
    out += " = ";
    out += k.get(defaults);
    out += "\n";
  }
  return out;
}

}  // namespace lukthung::cli
