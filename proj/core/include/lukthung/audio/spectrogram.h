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

#ifndef LUKTHUNG_AUDIO_SPECTROGRAM_H_
#define LUKTHUNG_AUDIO_SPECTROGRAM_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "lukthung/audio/wav.h"
#include "lukthung/nn/tensor.h"

namespace lukthung::audio {

// Front-end parameters. Defaults give 128 mel bins x 431 frames for a 10 s
// excerpt at 22050 Hz.
struct SpectrogramSpec {
  int sample_rate = 22050;
  int n_fft = 2048;
  int hop = 512;
  int n_mels = 128;
  double fmin = 300.0;
  double fmax = 8000.0;
  double clip_seconds = 10.0;
  double chorus_fraction = 0.3;

  // Throws ValidationError unless 0 < fmin < fmax <= sample_rate / 2,
  // 0 < hop <= n_fft and n_fft is a power of two.
  void Validate() const;

  std::size_t clip_samples() const;
  std::size_t num_bins() const { return static_cast<std::size_t>(n_fft) / 2 + 1; }
  // Centered framing: floor(samples / hop) + 1.
  std::size_t FramesFor(std::size_t samples) const {
    return samples / static_cast<std::size_t>(hop) + 1;
  }

  // Stable textual form; its hash keys the spectrogram cache.
  std::string Canonical() const;
  std::uint64_t Hash() const;
};

// HTK mel scale, 2595 * log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

// The fixed-length window starting at chorus_fraction of the song. If it would
// run past the end the start moves back to max(0, end - clip); songs shorter
// than the window are zero-padded at the end.
AudioClip ExcerptChorus(const AudioClip& clip, const SpectrogramSpec& spec);

// Hann-windowed magnitudes |X| of centered frames (reflect padding of
// n_fft / 2 at both ends), shape [n_fft / 2 + 1, FramesFor(len)].
nn::Tensor StftMagnitude(const AudioClip& clip, const SpectrogramSpec& spec);

// Triangular filters with centers equally spaced in mel between fmin and
// fmax, shape [n_mels, n_fft / 2 + 1]. Each row is scaled so its largest
// sampled weight is exactly 1. Throws ValidationError if a filter falls
// between two FFT bins.
nn::Tensor MelFilterbank(const SpectrogramSpec& spec);

inline constexpr double kLogMelFloor = 1e-10;
inline constexpr double kStdFloor = 1e-8;

// ln(filterbank . |X|^2 + 1e-10), shape [n_mels, frames]. Not standardized.
nn::Tensor LogMelSpectrogram(const AudioClip& clip, const SpectrogramSpec& spec);

// Zero mean, unit (population) standard deviation over all entries; the
// deviation is floored at kStdFloor.
nn::Tensor Standardize(const nn::Tensor& values);

struct MelSpectrogram {
  nn::Tensor values;  // [n_mels, frames], standardized
  std::string source_id;
};

// Standardized log-mel spectrogram of an excerpt already at spec.sample_rate.
MelSpectrogram ComputeMelSpectrogram(const AudioClip& excerpt,
                                     const SpectrogramSpec& spec,
                                     std::string source_id);

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_SPECTROGRAM_H_
