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

#include "artifacts.h"

#include <string_view>

#include "lukthung/audio/features.h"
#include "lukthung/audio/wav.h"
#include "lukthung/errors.h"
#include "lukthung/hash.h"

namespace lukthung::cli {
namespace {

std::vector<std::uint8_t> ReadExisting(const std::filesystem::path& path, const std::string& what,
                                       const std::string& hint) {
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError(what + " " + path.string(), hint);
  }
  return nn::ReadFileBytes(path);
}

std::string BytesHash(const std::vector<std::uint8_t>& bytes) {
  return HashToHex(HashBytes(std::as_bytes(std::span(bytes))));
}

}  // namespace

std::string FileHash(const std::filesystem::path& path) {
  return BytesHash(nn::ReadFileBytes(path));
}

std::vector<std::string> ReadLyricsTokens(const std::filesystem::path& path,
                                          lyrics::TokenizeMode mode) {
  const auto bytes = ReadExisting(path, "lyrics file", "check the manifest's lyrics_path");
  return lyrics::Tokenize(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), mode);
}

// ------------------------------------------------------------ AudioCache

AudioCache::AudioCache(std::filesystem::path dir, audio::SpectrogramSpec spec,
                       std::string config_hash)
    : dir_(std::move(dir)),
      spec_(spec),
      spec_hash_(HashToHex(spec.Hash())),
      config_hash_(std::move(config_hash)) {}

std::string AudioCache::KeyFor(const std::filesystem::path& audio_path) const {
  return BytesHash(ReadExisting(audio_path, "audio file", "check the manifest's audio_path")) +
         "-" + spec_hash_;
}

std::filesystem::path AudioCache::PathFor(const std::string& key) const {
  return dir_ / "audio" / (key + ".ltsp");
}

AudioEntry AudioCache::Compute(const std::filesystem::path& audio_path,
                               const std::string& song_id) const {
  const auto bytes = ReadExisting(audio_path, "audio file", "check the manifest's audio_path");
  AudioEntry e;
  e.key = BytesHash(bytes) + "-" + spec_hash_;
  try {
    audio::AudioFeatures f = audio::ExtractAudioFeatures(audio::DecodeWav(bytes), spec_, song_id);
    e.mel = std::move(f.mel.values);
    e.mfcc_stats = std::move(f.mfcc_stats);
  } catch (const Error& err) {
    // Same type would lose the song name; the message is what users see.
    throw ValidationError("song " + song_id + " (" + audio_path.string() + "): " + err.what());
  }
  return e;
}

bool AudioCache::Ensure(const std::filesystem::path& audio_path, const std::string& song_id,
                        std::string* key_out) const {
  const std::string key = KeyFor(audio_path);
  if (key_out != nullptr) *key_out = key;
  const auto path = PathFor(key);
  if (std::filesystem::is_regular_file(path)) {
    try {
      nn::ModelCheckpoint::Load(path, nn::kSpectrogramMagic);
      return false;
    } catch (const Error&) {
      // Damaged entry: fall through and rebuild it.
    }
  }
  const AudioEntry e = Compute(audio_path, song_id);
  nn::ModelCheckpoint c(std::string(nn::kSpectrogramMagic));
  c.SetMeta("source_id", song_id);
  c.SetMeta("cache_key", e.key);
  c.SetMeta("spectrogram", spec_.Canonical());
  c.SetMeta("spectrogram.hash", spec_hash_);
  c.SetMeta("config_hash", config_hash_);
  c.AddTensor("mel", e.mel);
  c.AddTensor("mfcc_stats", e.mfcc_stats);
  c.Save(path);
  return true;
}

AudioEntry AudioCache::Load(const std::filesystem::path& audio_path,
                            const std::string& song_id) const {
  AudioEntry e;
  e.key = KeyFor(audio_path);
  const auto path = PathFor(e.key);
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError("audio features for song " + song_id, "run featurize-audio");
  }
  const auto c = nn::ModelCheckpoint::Load(path, nn::kSpectrogramMagic);
  e.mel = c.TensorNamed("mel");
  e.mfcc_stats = c.TensorNamed("mfcc_stats");
  return e;
}

// ------------------------------------------------------------ LyricsFeatures

nn::Tensor LyricsFeatures::Row(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw MissingInputError("lyrics features for song " + id, "rerun featurize-lyrics");
  }
  const std::size_t width = bow.shape()[1];
  nn::Tensor row({width});
  const auto src = bow.values().subspan(it->second * width, width);
  std::copy(src.begin(), src.end(), row.values().begin());
  return row;
}

void LyricsFeatures::Save(const std::filesystem::path& path) const {
  nn::ModelCheckpoint c(std::string(nn::kBowMagic));
  c.SetMeta("vocab.hash", vocab_hash);
  c.SetMeta("config_hash", config_hash);
  c.SetMeta("song.count", std::to_string(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) c.SetMeta("song." + std::to_string(i), ids[i]);
  c.AddTensor("bow", bow);
  c.Save(path);
}

LyricsFeatures LyricsFeatures::Load(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError("lyrics features " + path.string(), "run featurize-lyrics");
  }
  const auto c = nn::ModelCheckpoint::Load(path, nn::kBowMagic);
  LyricsFeatures f;
  f.vocab_hash = c.Meta("vocab.hash");
  f.config_hash = c.Meta("config_hash");
  std::size_t n = 0;
  try {
    n = std::stoul(c.Meta("song.count"));
  } catch (const std::logic_error&) {
    throw CorruptInputError(path.string() + ": bad song.count");
  }
  for (std::size_t i = 0; i < n; ++i) f.ids.push_back(c.Meta("song." + std::to_string(i)));
  f.bow = c.TensorNamed("bow");
  if (f.bow.rank() != 2 || f.bow.shape()[0] != n) {
    throw CorruptInputError(path.string() + ": bow matrix does not match song.count");
  }
  f.Index();
  return f;
}

void LyricsFeatures::Index() {
  index_.clear();
  for (std::size_t i = 0; i < ids.size(); ++i) index_.emplace(ids[i], i);
}

// ------------------------------------------------------------ EmbeddingCache

EmbeddingCache::EmbeddingCache(std::filesystem::path dir, std::string checkpoint_hash)
    : dir_(std::move(dir)), checkpoint_hash_(std::move(checkpoint_hash)) {}

std::filesystem::path EmbeddingCache::PathFor(const std::string& audio_key) const {
  return dir_ / "embeddings" / checkpoint_hash_ / (audio_key + ".ltsp");
}

std::optional<EmbeddingCache::Entry> EmbeddingCache::Find(const std::string& audio_key) const {
  const auto path = PathFor(audio_key);
  if (!std::filesystem::is_regular_file(path)) return std::nullopt;
  try {
    const auto c = nn::ModelCheckpoint::Load(path, nn::kSpectrogramMagic);
    Entry e;
    const nn::Tensor& out = c.TensorChecked("output", {2});
    e.prob = out[0];
    e.logit = out[1];
    e.feature = c.TensorNamed("feature");
    return e;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void EmbeddingCache::Store(const std::string& audio_key, const Entry& entry) const {
  nn::ModelCheckpoint c(std::string(nn::kSpectrogramMagic));
  c.SetMeta("checkpoint.hash", checkpoint_hash_);
  c.SetMeta("cache_key", audio_key);
  c.AddTensor("output", nn::Tensor({2}, std::vector<float>{entry.prob, entry.logit}));
  c.AddTensor("feature", entry.feature);
  c.Save(PathFor(audio_key));
}

}  // namespace lukthung::cli
