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

#ifndef LUKTHUNG_DATA_SYNTH_H_
#define LUKTHUNG_DATA_SYNTH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lukthung/audio/wav.h"
#include "lukthung/data/manifest.h"

namespace lukthung::data {

// A two-genre toy corpus with a known, learnable difference in both
// modalities:
//   lukthung-like: a tone with 5-7 Hz vibrato of +-30 Hz depth and 3-5
//                  overtones; lyrics mostly drawn from token pool A.
//   other:         an unmodulated tone with 1-2 overtones; pool B.
// Both pools share a common set of tokens. f0 is 200-600 Hz, durations
// 10-30 s, and amplitudes and token counts vary per song.
struct SynthOptions {
  std::size_t n_per_class = 300;
  std::uint64_t seed = 42;
  int sample_rate = 22050;
  double min_seconds = 10.0;
  double max_seconds = 30.0;
  // Per-class train/val/test counts written into the manifest's split
  // field. Must sum to n_per_class when set.
  std::optional<std::array<std::size_t, 3>> split_per_class;
};

struct SynthSong {
  SongRecord record;
  audio::AudioClip audio;
  std::string lyrics;  // '|'-separated tokens, several per line
};

// Deterministic in (options, index): song i of a corpus can be produced on
// its own, which lets callers generate in parallel.
SynthSong GenerateSynthSong(const SynthOptions& options, std::size_t index);

// Writes audio/<id>.wav, lyrics/<id>.txt and manifest.jsonl below out_dir and
// returns the manifest records. Songs alternate lukthung, other, ...
std::vector<SongRecord> GenerateSynthCorpus(const std::filesystem::path& out_dir,
                                            const SynthOptions& options,
                                            std::size_t workers = 1);

// Fraction of the energy within +-40 Hz of the strongest 150-700 Hz
// spectral peak that lies more than 3 Hz away from it. Frequency modulation
// spreads the carrier into sidebands, so vibrato tones score near 1 and
// steady tones near 0.
double SidebandEnergyRatio(const audio::AudioClip& clip);

}  // namespace lukthung::data

#endif  // LUKTHUNG_DATA_SYNTH_H_
