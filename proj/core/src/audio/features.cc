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

#include "lukthung/audio/features.h"

#include "lukthung/audio/mfcc.h"
#include "lukthung/audio/resample.h"

namespace lukthung::audio {

AudioFeatures ExtractAudioFeatures(const AudioClip& decoded,
                                   const SpectrogramSpec& spec,
                                   std::string source_id) {
  const AudioClip excerpt = ExcerptChorus(Resample(decoded, spec.sample_rate), spec);
  const nn::Tensor log_mel = LogMelSpectrogram(excerpt, spec);
  return {MelSpectrogram{Standardize(log_mel), std::move(source_id)},
          MfccStats(log_mel, kMfccCoefficients)};
}

}  // namespace lukthung::audio
