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

#ifndef LUKTHUNG_TOOLS_ARTIFACTS_H_
#define LUKTHUNG_TOOLS_ARTIFACTS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lukthung/audio/spectrogram.h"
#include "lukthung/data/manifest.h"
#include "lukthung/lyrics/tokenizer.h"
#include "lukthung/nn/checkpoint.h"
#include "lukthung/nn/tensor.h"

namespace lukthung::cli {

// Hex FNV-1a of a whole file, used to key caches and pin checkpoints.
std::string FileHash(const std::filesystem::path& path);

// Reads and tokenizes one song's lyrics file.
std::vector<std::string> ReadLyricsTokens(const std::filesystem::path& path,
                                          lyrics::TokenizeMode mode);

// Spectrogram features of one song as stored in the cache.
struct AudioEntry {
  std::string key;       // <audio hash>-<spec hash>
  nn::Tensor mel;        // [n_mels, frames], standardized
  nn::Tensor mfcc_stats;  // [40]
};

// LTSP files under <cache>/audio named by the audio file's hash and the
// spectrogram spec hash, so edits to either invalidate the entry.
class AudioCache {
 public:
  AudioCache(std::filesystem::path dir, audio::SpectrogramSpec spec, std::string config_hash);

  std::string KeyFor(const std::filesystem::path& audio_path) const;
  std::filesystem::path PathFor(const std::string& key) const;

  // Computes and stores the entry unless a valid one exists. Returns true
  // when it had to compute.
  bool Ensure(const std::filesystem::path& audio_path, const std::string& song_id,
              std::string* key_out = nullptr) const;
  // Throws MissingInputError naming the song when the entry is absent.
  AudioEntry Load(const std::filesystem::path& audio_path, const std::string& song_id) const;

  // Decodes and extracts without touching the cache.
  AudioEntry Compute(const std::filesystem::path& audio_path, const std::string& song_id) const;

 private:
  std::filesystem::path dir_;
  audio::SpectrogramSpec spec_;
  std::string spec_hash_;
  std::string config_hash_;
};

// Bag-of-words vectors of every manifest song, one LTBW file per corpus.
struct LyricsFeatures {
  std::vector<std::string> ids;
  nn::Tensor bow;  // [songs, vocab]
  std::string vocab_hash;
  std::string config_hash;

  // Throws MissingInputError naming the song when it is not in the file.
  nn::Tensor Row(const std::string& id) const;

  void Save(const std::filesystem::path& path) const;
  static LyricsFeatures Load(const std::filesystem::path& path);

 private:
  void Index();
  std::unordered_map<std::string, std::size_t> index_;
};

// Penultimate CNN features keyed by (checkpoint hash, audio entry key).
class EmbeddingCache {
 public:
  EmbeddingCache(std::filesystem::path dir, std::string checkpoint_hash);

  struct Entry {
    float prob = 0.0f;
    float logit = 0.0f;
    nn::Tensor feature;
  };

  std::optional<Entry> Find(const std::string& audio_key) const;
  void Store(const std::string& audio_key, const Entry& entry) const;

 private:
  std::filesystem::path PathFor(const std::string& audio_key) const;

  std::filesystem::path dir_;
  std::string checkpoint_hash_;
};

}  // namespace lukthung::cli

#endif  // LUKTHUNG_TOOLS_ARTIFACTS_H_
