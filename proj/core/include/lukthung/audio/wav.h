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

#ifndef LUKTHUNG_AUDIO_WAV_H_
#define LUKTHUNG_AUDIO_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace lukthung::audio {

// Mono samples nominally in [-1, 1] at a fixed rate.
struct AudioClip {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Decodes RIFF/WAVE PCM (8/16/24/32-bit integer) or IEEE float (32/64-bit),
// including WAVE_FORMAT_EXTENSIBLE wrappers. Multi-channel input is averaged
// to mono; integer samples are scaled by 2^-(bits-1).
//
// Throws UnsupportedFormatError for a foreign container or codec and
// CorruptInputError for truncated or inconsistent files.
AudioClip DecodeWav(std::span<const std::uint8_t> bytes);
AudioClip ReadWav(const std::filesystem::path& path);

enum class WavEncoding { kPcm16, kFloat32 };

std::vector<std::uint8_t> EncodeWav(const AudioClip& clip,
                                    WavEncoding encoding = WavEncoding::kPcm16);
void WriteWav(const std::filesystem::path& path, const AudioClip& clip,
              WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_WAV_H_
