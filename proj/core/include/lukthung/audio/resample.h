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

#ifndef LUKTHUNG_AUDIO_RESAMPLE_H_
#define LUKTHUNG_AUDIO_RESAMPLE_H_

#include "lukthung/audio/wav.h"

namespace lukthung::audio {

struct ResamplerOptions {
  // Zero crossings of the sinc kernel on each side, at the narrower cutoff.
  int zero_crossings = 32;
  // Passband edge as a fraction of the lower of the two Nyquist frequencies.
  double rolloff = 0.95;
  double kaiser_beta = 8.6;
};

// Band-limited Kaiser-windowed sinc resampling. The output holds
// round(n * target_rate / clip.sample_rate) samples, and output sample k sits
// at source time k / target_rate. Equal rates return the input unchanged.
AudioClip Resample(const AudioClip& clip, int target_rate,
                   const ResamplerOptions& options = {});

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_RESAMPLE_H_
