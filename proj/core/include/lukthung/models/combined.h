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

#ifndef LUKTHUNG_MODELS_COMBINED_H_
#define LUKTHUNG_MODELS_COMBINED_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lukthung/models/mlp.h"

namespace lukthung::models {

inline constexpr std::size_t kLyricsFeatureDim = 100;
inline constexpr std::size_t kAudioFeatureDim = 700;

struct CombinedConfig {
  std::size_t lyrics_dim = kLyricsFeatureDim;
  std::size_t audio_dim = kAudioFeatureDim;
  std::vector<std::size_t> hidden = {256, 64};

  std::size_t input_dim() const { return lyrics_dim + audio_dim; }
  std::vector<std::size_t> dims() const;
  std::string Describe() const;
};

// Late-fusion head over the concatenated penultimate features of the two
// base models. The base models are not part of this object, so training it
// can never move their parameters.
template <typename T>
class Combined {
 public:
  using Input = nn::BasicTensor<T>;  // [lyrics_dim + audio_dim]
  using Cache = typename Mlp<T>::Cache;

  Combined() = default;
  Combined(CombinedConfig config, std::uint64_t seed);

  // Lyrics first, then audio. Throws ShapeError naming the offending side.
  static Input Concat(const nn::BasicTensor<T>& lyric_feature,
                      const nn::BasicTensor<T>& audio_feature,
                      const CombinedConfig& config = {});

  ModelOutput<T> Forward(const Input& fused, Cache* cache = nullptr) const;
  ModelOutput<T> Forward(const nn::BasicTensor<T>& lyric_feature,
                         const nn::BasicTensor<T>& audio_feature) const;
  void Backward(const Cache& cache, T dlogit) { head_.Backward(cache, dlogit); }

  nn::ParameterList<T> Parameters() { return head_.Parameters(); }
  std::vector<const nn::BasicParameter<T>*> Parameters() const {
    return head_.Parameters();
  }

  const CombinedConfig& config() const { return config_; }
  std::size_t feature_dim() const { return head_.feature_dim(); }

 private:
  CombinedConfig config_;
  Mlp<T> head_;
};

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_COMBINED_H_
