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

#include "lukthung/data/synth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

#include "lukthung/audio/fft.h"
#include "lukthung/errors.h"
#include "lukthung/hash.h"
#include "lukthung/nn/checkpoint.h"
#include "lukthung/parallel.h"

namespace lukthung::data {
namespace {

constexpr std::size_t kPoolSize = 40;
constexpr std::size_t kSharedSize = 20;

// Thai consonants U+0E01..U+0E2E as UTF-8.
std::string ThaiLetter(std::size_t i) {
  const char32_t cp = 0x0E01 + static_cast<char32_t>(i % 46);
  std::string s;
  s += static_cast<char>(0xE0 | (cp >> 12));
  s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
  s += static_cast<char>(0x80 | (cp & 0x3F));
  return s;
}

// Distinct two- or three-letter tokens; pool 0 = A, 1 = B, 2 = shared.
std::string PoolToken(std::size_t pool, std::size_t i) {
  const std::size_t code = pool * 64 + i;
  std::string token = ThaiLetter(code / 46) + ThaiLetter(code);
  if (pool == 2) token += ThaiLetter(i * 7 + 3);
  return token;
}

std::string SongId(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth%05zu", index);
  return buf;
}

}  // namespace

SynthSong GenerateSynthSong(const SynthOptions& options, std::size_t index) {
  if (options.sample_rate <= 0 || options.min_seconds <= 0 ||
      options.max_seconds < options.min_seconds) {
    throw ValidationError("synth: invalid sample rate or duration range");
  }
  // Per-song stream so songs are independent of generation order.
  std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                    static_cast<std::uint32_t>(options.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const bool lukthung = index % 2 == 0;
  SynthSong song;
  SongRecord& r = song.record;
  r.id = SongId(index);
  r.audio_path = "audio/" + r.id + ".wav";
  r.lyrics_path = "lyrics/" + r.id + ".txt";
  r.label = lukthung ? Label::kLukthung : Label::kOther;
  r.genre = lukthung ? "synthetic-lukthung" : "synthetic-other";
  r.year = 1960 + static_cast<int>(rng() % 61);
  if (options.split_per_class) {
    const auto& counts = *options.split_per_class;
    if (counts[0] + counts[1] + counts[2] != options.n_per_class) {
      throw ValidationError("synth: split counts must sum to n_per_class");
    }
    const std::size_t rank = index / 2;  // position within its class
    r.split = rank < counts[0]                ? Split::kTrain
              : rank < counts[0] + counts[1] ? Split::kVal
                                               : Split::kTest;
  }

  // Audio.
  const double seconds = uniform(options.min_seconds, options.max_seconds);
  const double rate = options.sample_rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  const double f0 = uniform(200.0, 600.0);
  const double amplitude = uniform(0.2, 0.8);
  const std::size_t partials =
      lukthung ? 4 + static_cast<std::size_t>(rng() % 3) : 2 + static_cast<std::size_t>(rng() % 2);
  const double vibrato_rate = uniform(5.0, 7.0);
  const double vibrato_depth = lukthung ? 30.0 : 0.0;
  std::vector<double> partial_gain(partials);
  for (std::size_t h = 0; h < partials; ++h) partial_gain[h] = uniform(0.3, 1.0) / (h + 1);
  const double noise_level = uniform(0.0, 0.01);
  std::normal_distribution<double> noise(0.0, 1.0);

  double norm = 0.0;
  for (double g : partial_gain) norm += g;
  const double two_pi = 2.0 * std::numbers::pi;
  const double fade = std::min(0.05 * rate, 0.5 * n);
  song.audio.sample_rate = options.sample_rate;
  song.audio.samples.resize(n);
  double phase = 0.0;  // fundamental phase in radians
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double f = f0 + vibrato_depth * std::sin(two_pi * vibrato_rate * t);
    double v = 0.0;
    for (std::size_t h = 0; h < partials; ++h) {
      v += partial_gain[h] * std::sin(static_cast<double>(h + 1) * phase);
    }
    phase = std::fmod(phase + two_pi * f / rate, two_pi * 64.0);
    double env = 1.0;
    if (i < fade) env = i / fade;
    if (n - i < fade) env = (n - i) / fade;
    song.audio.samples[i] =
        static_cast<float>(amplitude * env * v / norm + noise_level * noise(rng));
  }

  // Lyrics.
  const std::size_t count = 60 + static_cast<std::size_t>(rng() % 141);
  const std::size_t own_pool = lukthung ? 0 : 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = unit(rng);
    std::size_t pool = own_pool;
    if (u < 0.35) {
      pool = 2;
    } else if (u < 0.40) {
      pool = 1 - own_pool;
    }
    const std::size_t size = pool == 2 ? kSharedSize : kPoolSize;
    song.lyrics += PoolToken(pool, static_cast<std::size_t>(rng() % size));
    song.lyrics += (i + 1) % 8 == 0 || i + 1 == count ? "\n" : "|";
  }
  return song;
}

std::vector<SongRecord> GenerateSynthCorpus(const std::filesystem::path& out_dir,
                                            const SynthOptions& options, std::size_t workers) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "audio", ec);
  if (!ec) std::filesystem::create_directories(out_dir / "lyrics", ec);
  if (ec) {
    throw IoError("cannot create corpus directory " + out_dir.string() + ": " + ec.message());
  }
  const std::size_t total = 2 * options.n_per_class;
  std::vector<SongRecord> records(total);
  ParallelFor(total, workers, [&](std::size_t i) {
    SynthSong song = GenerateSynthSong(options, i);
    audio::WriteWav(out_dir / song.record.audio_path, song.audio);
    nn::WriteFileBytes(out_dir / song.record.lyrics_path,
                       std::span(reinterpret_cast<const std::uint8_t*>(song.lyrics.data()),
                                 song.lyrics.size()));
    records[i] = std::move(song.record);
  });
  SaveManifest(out_dir / "manifest.jsonl", records);
  return records;
}

double SidebandEnergyRatio(const audio::AudioClip& clip) {
  if (clip.samples.size() < 1024 || clip.sample_rate <= 0) {
    throw ValidationError("sideband ratio needs at least 1024 samples");
  }
  // Up to 2^17 samples from the middle: under 1 Hz resolution at 22050 Hz.
  std::size_t size = 1024;
  while (size * 2 <= clip.samples.size() && size < (std::size_t{1} << 17)) size *= 2;
  const std::size_t offset = (clip.samples.size() - size) / 2;
  std::vector<double> frame(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / size);
    frame[i] = w * clip.samples[offset + i];
  }
  audio::Fft fft(size);
  std::vector<double> power(size / 2 + 1);
  fft.PowerSpectrum(frame, power);
  const double hz_per_bin = static_cast<double>(clip.sample_rate) / size;
  const auto bin = [&](double hz) {
    return std::min(power.size() - 1, static_cast<std::size_t>(std::max(0.0, hz / hz_per_bin)));
  };
  std::size_t peak = bin(150.0);
  for (std::size_t k = bin(150.0); k <= bin(700.0); ++k) {
    if (power[k] > power[peak]) peak = k;
  }
  const double peak_hz = peak * hz_per_bin;
  double total = 0.0;
  double side = 0.0;
  for (std::size_t k = bin(peak_hz - 40.0); k <= bin(peak_hz + 40.0); ++k) {
    total += power[k];
    if (std::abs(k * hz_per_bin - peak_hz) > 3.0) side += power[k];
  }
  return total > 0.0 ? side / total : 0.0;
}

}  // namespace lukthung::data
