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

#ifndef LUKTHUNG_AUDIO_MFCC_H_
#define LUKTHUNG_AUDIO_MFCC_H_

#include <cstddef>

#include "lukthung/nn/tensor.h"

namespace lukthung::audio {

// Orthonormal DCT-II of each frame of a log-mel spectrogram [n_mels, T]
// (before standardization). Coefficients 1..n_coeffs are kept, dropping the
// 0th energy term, and the result is the per-coefficient mean over frames
// followed by the per-coefficient sample standard deviation: 2 * n_coeffs
// values. Requires T >= 2.
nn::Tensor MfccStats(const nn::Tensor& log_mel, std::size_t n_coeffs = 20);

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_MFCC_H_
