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

#include "lukthung/audio/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>

#include "lukthung/errors.h"
#include "lukthung/nn/checkpoint.h"

namespace lukthung::audio {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t U16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t U32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

std::string FourCc(const std::uint8_t* p) {
  std::string s(reinterpret_cast<const char*>(p), 4);
  for (char& c : s) {
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) > 0x7e) c = '?';
  }
  return s;
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

Format ParseFmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) throw CorruptInputError("WAV fmt chunk too short");
  Format f;
  f.tag = U16(p);
  f.channels = U16(p + 2);
  f.sample_rate = U32(p + 4);
  f.block_align = U16(p + 12);
  f.bits = U16(p + 14);
  if (f.tag == kFormatExtensible) {
    if (size < 40) throw CorruptInputError("WAV extensible fmt chunk too short");
    // The sub-format GUID starts at offset 24; its first two bytes are the
    // plain format tag.
    f.tag = U16(p + 24);
  }
  if (f.tag != kFormatPcm && f.tag != kFormatFloat) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0x%04x", f.tag);
    throw UnsupportedFormatError(std::string("unsupported WAV codec, format tag ") +
                                 buf + " in 'fmt ' chunk");
  }
  const bool int_ok = f.tag == kFormatPcm &&
                      (f.bits == 8 || f.bits == 16 || f.bits == 24 || f.bits == 32);
  const bool float_ok = f.tag == kFormatFloat && (f.bits == 32 || f.bits == 64);
  if (!int_ok && !float_ok) {
    throw UnsupportedFormatError("unsupported WAV sample width " +
                                 std::to_string(f.bits) + " bits");
  }
  if (f.channels == 0 || f.sample_rate == 0) {
    throw CorruptInputError("WAV fmt chunk declares zero channels or rate");
  }
  if (f.block_align != f.channels * (f.bits / 8)) {
    throw CorruptInputError("WAV block_align " + std::to_string(f.block_align) +
                            " inconsistent with channels/bits");
  }
  return f;
}

double ReadSample(const std::uint8_t* p, const Format& f) {
  if (f.tag == kFormatFloat) {
    if (f.bits == 32) return std::bit_cast<float>(U32(p));
    std::uint64_t v = static_cast<std::uint64_t>(U32(p)) |
                      static_cast<std::uint64_t>(U32(p + 4)) << 32;
    return std::bit_cast<double>(v);
  }
  switch (f.bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(U16(p)) / 32768.0;
    case 24: {
      std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(U32(p)) / 2147483648.0;
  }
}

}  // namespace

AudioClip DecodeWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) {
    if (bytes.size() >= 4 && FourCc(bytes.data()) == "RIFF") {
      throw CorruptInputError("WAV header truncated");
    }
    throw UnsupportedFormatError("not a RIFF/WAVE file (" +
                                 std::to_string(bytes.size()) + " bytes)");
  }
  if (FourCc(bytes.data()) != "RIFF") {
    throw UnsupportedFormatError("unsupported container: found chunk '" +
                                 FourCc(bytes.data()) + "', expected 'RIFF'");
  }
  if (FourCc(bytes.data() + 8) != "WAVE") {
    throw UnsupportedFormatError("unsupported RIFF form '" + FourCc(bytes.data() + 8) +
                                 "', expected 'WAVE'");
  }

  std::optional<Format> fmt;
  std::size_t pos = 12;
  while (true) {
    if (pos + 8 > bytes.size()) {
      throw CorruptInputError("WAV file ends before a 'data' chunk");
    }
    const std::string id = FourCc(bytes.data() + pos);
    const std::uint32_t size = U32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (body + size > bytes.size()) throw CorruptInputError("WAV fmt chunk truncated");
      fmt = ParseFmt(bytes.data() + body, size);
    } else if (id == "data") {
      if (!fmt) throw CorruptInputError("WAV 'data' chunk precedes 'fmt '");
      if (body + size > bytes.size()) {
        throw CorruptInputError("WAV data chunk truncated: declares " +
                                std::to_string(size) + " bytes, " +
                                std::to_string(bytes.size() - body) + " present");
      }
      if (size % fmt->block_align != 0) {
        throw CorruptInputError("WAV data size is not a whole number of frames");
      }
      const std::size_t frames = size / fmt->block_align;
      const std::size_t width = fmt->bits / 8;
      AudioClip clip;
      clip.sample_rate = static_cast<int>(fmt->sample_rate);
      clip.samples.resize(frames);
      for (std::size_t i = 0; i < frames; ++i) {
        const std::uint8_t* frame = bytes.data() + body + i * fmt->block_align;
        double acc = 0.0;
        for (std::size_t c = 0; c < fmt->channels; ++c) {
          acc += ReadSample(frame + c * width, *fmt);
        }
        clip.samples[i] = static_cast<float>(acc / fmt->channels);
      }
      return clip;
    }
    // Chunks are word aligned.
    pos = body + size + (size & 1u);
  }
}

AudioClip ReadWav(const std::filesystem::path& path) {
  return DecodeWav(nn::ReadFileBytes(path));
}

std::vector<std::uint8_t> EncodeWav(const AudioClip& clip, WavEncoding encoding) {
  if (clip.sample_rate <= 0) throw ValidationError("clip sample_rate must be positive");
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t tag = encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(clip.samples.size() * (bits / 8));
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  auto put = [&out](std::uint32_t v, int n) {
    for (int i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto tag4 = [&out](const char* s) { out.insert(out.end(), s, s + 4); };
  tag4("RIFF");
  put(36 + data_size, 4);
  tag4("WAVE");
  tag4("fmt ");
  put(16, 4);
  put(tag, 2);
  put(1, 2);
  put(static_cast<std::uint32_t>(clip.sample_rate), 4);
  put(static_cast<std::uint32_t>(clip.sample_rate) * (bits / 8), 4);
  put(bits / 8, 2);
  put(bits, 2);
  tag4("data");
  put(data_size, 4);
  for (float s : clip.samples) {
    if (encoding == WavEncoding::kPcm16) {
      const double scaled = std::round(std::clamp<double>(s, -1.0, 1.0) * 32768.0);
      const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      put(static_cast<std::uint16_t>(v), 2);
    } else {
      put(std::bit_cast<std::uint32_t>(s), 4);
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, const AudioClip& clip,
              WavEncoding encoding) {
  nn::WriteFileBytes(path, EncodeWav(clip, encoding));
}

}  // namespace lukthung::audio
