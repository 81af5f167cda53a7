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

#ifndef LUKTHUNG_AUDIO_FEATURES_H_
#define LUKTHUNG_AUDIO_FEATURES_H_

#include <string>

#include "lukthung/audio/spectrogram.h"
#include "lukthung/audio/wav.h"

namespace lukthung::audio {

inline constexpr std::size_t kMfccCoefficients = 20;

struct AudioFeatures {
  MelSpectrogram mel;     // network input
  nn::Tensor mfcc_stats;  // [2 * kMfccCoefficients], baseline input
};

// decode output -> resample -> chorus excerpt -> log-mel -> {standardized
// mel, MFCC statistics}.
AudioFeatures ExtractAudioFeatures(const AudioClip& decoded,
                                   const SpectrogramSpec& spec,
                                   std::string source_id);

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_FEATURES_H_
