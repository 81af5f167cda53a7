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

#include "lukthung/models/combined.h"

#include <algorithm>

#include "lukthung/errors.h"

namespace lukthung::models {
namespace {

std::string JoinDims(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t d : dims) {
    if (!out.empty()) out += ",";
    out += std::to_string(d);
  }
  return out;
}

template <typename T>
void CheckSide(const nn::BasicTensor<T>& t, std::size_t width, const char* side) {
  if (t.rank() != 1 || t.dim(0) != width) {
    throw ShapeError(std::string(side) + " feature: expected [" + std::to_string(width) +
                     "], got " + nn::ShapeToString(t.shape()));
  }
}

}  // namespace

std::vector<std::size_t> CombinedConfig::dims() const {
  std::vector<std::size_t> d{input_dim()};
  d.insert(d.end(), hidden.begin(), hidden.end());
  return d;
}

std::string CombinedConfig::Describe() const {
  return "combined;lyrics=" + std::to_string(lyrics_dim) +
         ";audio=" + std::to_string(audio_dim) + ";hidden=" + JoinDims(hidden);
}

template <typename T>
Combined<T>::Combined(CombinedConfig config, std::uint64_t seed)
    : config_(std::move(config)), head_(config_.dims(), seed, "fusion") {}

template <typename T>
typename Combined<T>::Input Combined<T>::Concat(const nn::BasicTensor<T>& lyric_feature,
                                                const nn::BasicTensor<T>& audio_feature,
                                                const CombinedConfig& config) {
  CheckSide(lyric_feature, config.lyrics_dim, "lyrics");
  CheckSide(audio_feature, config.audio_dim, "audio");
  Input fused({config.input_dim()});
  std::copy(lyric_feature.values().begin(), lyric_feature.values().end(), fused.data());
  std::copy(audio_feature.values().begin(), audio_feature.values().end(),
            fused.data() + config.lyrics_dim);
  return fused;
}

template <typename T>
ModelOutput<T> Combined<T>::Forward(const Input& fused, Cache* cache) const {
  if (fused.rank() != 1 || fused.dim(0) != config_.input_dim()) {
    throw ShapeError("fused feature: expected [" + std::to_string(config_.input_dim()) +
                     "], got " + nn::ShapeToString(fused.shape()));
  }
  return head_.Forward(fused, cache);
}

template <typename T>
ModelOutput<T> Combined<T>::Forward(const nn::BasicTensor<T>& lyric_feature,
                                    const nn::BasicTensor<T>& audio_feature) const {
  return Forward(Concat(lyric_feature, audio_feature, config_));
}

template class Combined<float>;
template class Combined<double>;

}  // namespace lukthung::models
