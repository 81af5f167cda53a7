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

#ifndef LUKTHUNG_NN_CHECKPOINT_H_
#define LUKTHUNG_NN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lukthung/nn/tensor.h"

namespace lukthung::nn {

// On-disk layout, all integers little-endian:
//
//   magic      4 bytes ("LTNN" for models, "LTSP" for spectrogram caches)
//   version    u16
//   meta_len   u32
//   metadata   meta_len bytes of UTF-8 "key=value\n" lines
//   payload    every tensor's f32 values, in declaration order
//
// The writer appends "tensor.count" and one "tensor.<i>=<name> <d0>x<d1>..."
// line per tensor to the metadata, which is how the reader sizes the payload.
inline constexpr std::uint16_t kCheckpointVersion = 1;
inline constexpr std::string_view kModelMagic = "LTNN";
inline constexpr std::string_view kSpectrogramMagic = "LTSP";
inline constexpr std::string_view kBowMagic = "LTBW";

struct NamedTensor {
  std::string name;
  Tensor value;
};

class ModelCheckpoint {
 public:
  ModelCheckpoint() = default;
  explicit ModelCheckpoint(std::string magic) : magic_(std::move(magic)) {}

  const std::string& magic() const { return magic_; }

  void SetMeta(const std::string& key, const std::string& value);
  bool HasMeta(const std::string& key) const { return meta_.count(key) != 0; }
  // Throws ValidationError naming the key if absent.
  const std::string& Meta(const std::string& key) const;
  const std::map<std::string, std::string>& metadata() const { return meta_; }

  void AddTensor(std::string name, Tensor value);
  const std::vector<NamedTensor>& tensors() const { return tensors_; }
  bool HasTensor(const std::string& name) const;
  // Returns the named tensor after checking its shape is exactly `expected`.
  const Tensor& TensorChecked(const std::string& name,
                              const Shape& expected) const;
  const Tensor& TensorNamed(const std::string& name) const;

  std::vector<std::uint8_t> Serialize() const;
  static ModelCheckpoint Deserialize(std::span<const std::uint8_t> bytes,
                                     std::string_view expected_magic);

  void Save(const std::filesystem::path& path) const;
  static ModelCheckpoint Load(const std::filesystem::path& path,
                              std::string_view expected_magic);

 private:
  std::string magic_ = std::string(kModelMagic);
  std::map<std::string, std::string> meta_;
  std::vector<NamedTensor> tensors_;
};

// Whole-file helpers shared by the artifact readers and writers.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace lukthung::nn

#endif  // LUKTHUNG_NN_CHECKPOINT_H_
