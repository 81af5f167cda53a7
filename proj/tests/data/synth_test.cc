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

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "lukthung/audio/wav.h"
#include "lukthung/data/manifest.h"
#include "lukthung/data/synth.h"
#include "lukthung/errors.h"
#include "lukthung/lyrics/tokenizer.h"
#include "test_util.h"

namespace lukthung::data {
namespace {

using ::lukthung::testing::TempDir;

SynthOptions Short(std::size_t n_per_class, std::uint64_t seed = 42) {
  SynthOptions o;
  o.n_per_class = n_per_class;
  o.seed = seed;
  o.min_seconds = 6.0;
  o.max_seconds = 8.0;
  return o;
}

std::string ReadAll(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Direct DTFT of a Hann-windowed 4 s segment on a 0.25 Hz grid, computed
// with a rotating phasor. Shares nothing with the library FFT.
double OracleSidebandRatio(const audio::AudioClip& clip) {
  const std::size_t size = 4 * static_cast<std::size_t>(clip.sample_rate);
  const std::size_t offset = (clip.samples.size() - size) / 2;
  std::vector<double> x(size);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = (0.5 - 0.5 * std::cos(2 * std::numbers::pi * i / size)) * clip.samples[offset + i];
  }
  const auto power = [&](double hz) {
    const std::complex<double> step = std::polar(1.0, -2 * std::numbers::pi * hz / clip.sample_rate);
    std::complex<double> rot = 1.0, acc = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      acc += x[i] * rot;
      rot *= step;
    }
    return std::norm(acc);
  };
  const double grid = 0.25;
  double peak_hz = 150.0, peak = -1.0;
  for (double hz = 150.0; hz <= 700.0; hz += grid) {
    const double p = power(hz);
    if (p > peak) {
      peak = p;
      peak_hz = hz;
    }
  }
  double total = 0.0, side = 0.0;
  for (double hz = peak_hz - 40.0; hz <= peak_hz + 40.0; hz += grid) {
    const double p = power(hz);
    total += p;
    if (std::abs(hz - peak_hz) > 3.0) side += p;
  }
  return side / total;
}

TEST(Synth, SongIsDeterministicAndIndependentOfOrder) {
  const SynthOptions o = Short(4);
  const SynthSong a = GenerateSynthSong(o, 5);
  GenerateSynthSong(o, 2);
  const SynthSong b = GenerateSynthSong(o, 5);
  EXPECT_EQ(a.audio.samples, b.audio.samples);
  EXPECT_EQ(a.lyrics, b.lyrics);
  EXPECT_EQ(a.record, b.record);
  EXPECT_NE(GenerateSynthSong(Short(4, 43), 5).audio.samples, a.audio.samples);
}

TEST(Synth, SongProperties) {
  SynthOptions o = Short(10);
  o.min_seconds = 10.0;
  o.max_seconds = 30.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const SynthSong s = GenerateSynthSong(o, i);
    EXPECT_EQ(s.record.label, i % 2 == 0 ? Label::kLukthung : Label::kOther);
    EXPECT_EQ(s.audio.sample_rate, 22050);
    EXPECT_GE(s.audio.duration_seconds(), 10.0 - 1e-3);
    EXPECT_LE(s.audio.duration_seconds(), 30.0);
    float peak = 0.0f;
    for (float v : s.audio.samples) peak = std::max(peak, std::abs(v));
    EXPECT_LT(peak, 1.0f);
    EXPECT_GT(peak, 0.05f);
    const auto tokens = lyrics::Tokenize(s.lyrics, lyrics::TokenizeMode::kPretokenized);
    EXPECT_GE(tokens.size(), 60u);
    EXPECT_LE(tokens.size(), 200u);
  }
}

TEST(Synth, LyricPoolsDifferByClass) {
  const SynthOptions o = Short(20);
  std::set<std::string> luk, other;
  for (std::size_t i = 0; i < 40; ++i) {
    for (auto& t : lyrics::Tokenize(GenerateSynthSong(o, i).lyrics,
                                    lyrics::TokenizeMode::kPretokenized)) {
      (i % 2 == 0 ? luk : other).insert(t);
    }
  }
  std::size_t shared = 0;
  for (const auto& t : luk) shared += other.count(t);
  // Shared tokens exist, but most of each class vocabulary is its own pool
  // plus the small cross-pool leak.
  EXPECT_GT(shared, 0u);
  EXPECT_LT(shared, luk.size());
  EXPECT_LT(shared, other.size());
}

TEST(Synth, CorpusIsBalancedAndByteIdentical) {
  TempDir a("synth_a"), b("synth_b");
  SynthOptions o = Short(3);
  o.min_seconds = 1.0;
  o.max_seconds = 2.0;
  o.split_per_class = {{1, 1, 1}};
  const auto records = GenerateSynthCorpus(a.path(), o, 1);
  GenerateSynthCorpus(b.path(), o, 3);
  ASSERT_EQ(records.size(), 6u);
  std::size_t positives = 0;
  for (const auto& r : records) {
    positives += r.label == Label::kLukthung;
    EXPECT_TRUE(r.split.has_value());
    EXPECT_EQ(ReadAll(a.path() / r.audio_path), ReadAll(b.path() / r.audio_path)) << r.id;
    EXPECT_EQ(ReadAll(a.path() / r.lyrics_path), ReadAll(b.path() / r.lyrics_path)) << r.id;
    EXPECT_FALSE(ReadAll(a.path() / r.lyrics_path).empty());
    EXPECT_EQ(audio::ReadWav(a.path() / r.audio_path).sample_rate, 22050);
  }
  EXPECT_EQ(positives, 3u);
  EXPECT_EQ(ReadAll(a.path() / "manifest.jsonl"), ReadAll(b.path() / "manifest.jsonl"));
  const Manifest m = LoadManifest(a.path() / "manifest.jsonl");
  EXPECT_EQ(m.records, records);
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    const auto part = m.WithSplit(s);
    ASSERT_EQ(part.size(), 2u);
    EXPECT_NE(part[0].label, part[1].label);
  }
}

TEST(Synth, Errors) {
  SynthOptions o = Short(3);
  o.split_per_class = {{1, 1, 2}};
  EXPECT_THROW(GenerateSynthSong(o, 0), ValidationError);
  o = Short(3);
  o.max_seconds = 1.0;
  EXPECT_THROW(GenerateSynthSong(o, 0), ValidationError);
  TempDir dir("synth_err");
  { std::ofstream(dir.path() / "file") << "x"; }
  EXPECT_THROW(GenerateSynthCorpus(dir.path() / "file" / "sub", Short(1)), IoError);
}

TEST(Synth, VibratoShowsSidebandsInDirectTransform) {
  const SynthOptions o = Short(2);
  const SynthSong luk = GenerateSynthSong(o, 0);
  const SynthSong other = GenerateSynthSong(o, 1);
  const double luk_oracle = OracleSidebandRatio(luk.audio);
  const double other_oracle = OracleSidebandRatio(other.audio);
  EXPECT_GT(luk_oracle, 0.5);
  EXPECT_LT(other_oracle, 0.2);
  EXPECT_NEAR(SidebandEnergyRatio(luk.audio), luk_oracle, 0.15);
  EXPECT_NEAR(SidebandEnergyRatio(other.audio), other_oracle, 0.15);
}

TEST(Synth, ClassesSeparateOnSidebandEnergy) {
  const SynthOptions o = Short(30, 7);
  std::vector<double> luk, other;
  for (std::size_t i = 0; i < 60; ++i) {
    (i % 2 == 0 ? luk : other).push_back(SidebandEnergyRatio(GenerateSynthSong(o, i).audio));
  }
  const auto mean_sd = [](const std::vector<double>& v) {
    double m = 0.0, s = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, std::sqrt(s / (v.size() - 1))};
  };
  const auto [m1, s1] = mean_sd(luk);
  const auto [m0, s0] = mean_sd(other);
  const double pooled = std::sqrt(0.5 * (s1 * s1 + s0 * s0));
  EXPECT_GT(m1 - m0, 3.0 * pooled) << m1 << " " << s1 << " " << m0 << " " << s0;
}

}  // namespace
}  // namespace lukthung::data
