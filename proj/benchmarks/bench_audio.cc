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

#include <benchmark/benchmark.h>

#include <random>

#include "lukthung/audio/features.h"
#include "lukthung/audio/spectrogram.h"

namespace {

using lukthung::audio::AudioClip;

AudioClip Noise(double seconds) {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> dist(0.0f, 0.3f);
  AudioClip clip;
  clip.sample_rate = 22050;
  clip.samples.resize(static_cast<std::size_t>(seconds * 22050));
  for (float& s : clip.samples) s = dist(rng);
  return clip;
}

void BM_StftMagnitude(benchmark::State& state) {
  const AudioClip clip = Noise(10.0);
  const lukthung::audio::SpectrogramSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(lukthung::audio::StftMagnitude(clip, spec));
}
BENCHMARK(BM_StftMagnitude)->Unit(benchmark::kMillisecond);

void BM_MelSpectrogram(benchmark::State& state) {
  const AudioClip clip = Noise(10.0);
  const lukthung::audio::SpectrogramSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lukthung::audio::ComputeMelSpectrogram(clip, spec, "noise"));
  }
}
BENCHMARK(BM_MelSpectrogram)->Unit(benchmark::kMillisecond);

// Chorus excerpt, mel spectrogram and MFCC statistics of a 30 s song.
void BM_ExtractAudioFeatures(benchmark::State& state) {
  const AudioClip song = Noise(30.0);
  const lukthung::audio::SpectrogramSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lukthung::audio::ExtractAudioFeatures(song, spec, "song"));
  }
}
BENCHMARK(BM_ExtractAudioFeatures)->Unit(benchmark::kMillisecond);

}  // namespace
