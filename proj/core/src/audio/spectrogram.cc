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

#include "lukthung/audio/spectrogram.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "lukthung/audio/fft.h"
#include "lukthung/errors.h"
#include "lukthung/hash.h"

namespace lukthung::audio {
namespace {

// Periodic Hann window of length n.
std::vector<double> HannWindow(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
  }
  return w;
}

// Index into a signal of length n after reflect padding (edge sample not
// repeated), valid for arbitrarily long padding.
std::size_t ReflectIndex(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

// Power spectra |X|^2 of centered frames, frame-major [frames][bins].
std::vector<double> PowerFrames(const AudioClip& clip, const SpectrogramSpec& spec,
                                std::size_t* frames_out) {
  spec.Validate();
  if (clip.samples.size() < static_cast<std::size_t>(spec.hop)) {
    throw ValidationError("clip of " + std::to_string(clip.samples.size()) +
                          " samples is shorter than one hop (" +
                          std::to_string(spec.hop) + ")");
  }
  const std::size_t n = clip.samples.size();
  const std::size_t n_fft = static_cast<std::size_t>(spec.n_fft);
  const std::size_t bins = spec.num_bins();
  const std::size_t frames = spec.FramesFor(n);
  const auto pad = static_cast<std::ptrdiff_t>(n_fft / 2);
  const Fft fft(n_fft);
  const std::vector<double> window = HannWindow(n_fft);
  std::vector<double> power(frames * bins);
  std::vector<double> frame(n_fft);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(t) * spec.hop - pad;
    for (std::size_t i = 0; i < n_fft; ++i) {
      frame[i] = window[i] *
                 clip.samples[ReflectIndex(start + static_cast<std::ptrdiff_t>(i), n)];
    }
    fft.PowerSpectrum(frame, std::span<double>(power.data() + t * bins, bins));
  }
  *frames_out = frames;
  return power;
}

}  // namespace

void SpectrogramSpec::Validate() const {
  if (sample_rate <= 0) throw ValidationError("sample_rate must be positive");
  if (n_fft < 2 || !std::has_single_bit(static_cast<unsigned>(n_fft))) {
    throw ValidationError("n_fft must be a power of two, got " + std::to_string(n_fft));
  }
  if (hop <= 0 || hop > n_fft) throw ValidationError("hop must be in (0, n_fft]");
  if (n_mels <= 0) throw ValidationError("n_mels must be positive");
  if (!(fmin > 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ValidationError("frequency range must satisfy 0 < fmin < fmax <= sample_rate/2");
  }
  if (!(clip_seconds > 0.0)) throw ValidationError("clip_seconds must be positive");
  if (!(chorus_fraction >= 0.0 && chorus_fraction < 1.0)) {
    throw ValidationError("chorus_fraction must lie in [0, 1)");
  }
}

std::size_t SpectrogramSpec::clip_samples() const {
  return static_cast<std::size_t>(std::llround(clip_seconds * sample_rate));
}

std::string SpectrogramSpec::Canonical() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "sample_rate=%d;n_fft=%d;hop=%d;n_mels=%d;fmin=%.17g;fmax=%.17g;"
                "clip_seconds=%.17g;chorus_fraction=%.17g",
                sample_rate, n_fft, hop, n_mels, fmin, fmax, clip_seconds,
                chorus_fraction);
  return buf;
}

std::uint64_t SpectrogramSpec::Hash() const { return HashString(Canonical()); }

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

AudioClip ExcerptChorus(const AudioClip& clip, const SpectrogramSpec& spec) {
  spec.Validate();
  if (clip.samples.empty()) throw ValidationError("cannot excerpt an empty clip");
  if (clip.sample_rate != spec.sample_rate) {
    throw ValidationError("excerpt expects audio at " + std::to_string(spec.sample_rate) +
                          " Hz, got " + std::to_string(clip.sample_rate) + " Hz");
  }
  const std::size_t n = clip.samples.size();
  const std::size_t length = spec.clip_samples();
  // The small epsilon keeps exact products such as 0.3 * 2205000 from
  // rounding down a sample.
  auto start = static_cast<std::size_t>(
      std::floor(spec.chorus_fraction * static_cast<double>(n) + 1e-6));
  if (start + length > n) start = n > length ? n - length : 0;
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(length, 0.0f);
  const std::size_t available = std::min(length, n - start);
  std::copy_n(clip.samples.begin() + static_cast<std::ptrdiff_t>(start), available,
              out.samples.begin());
  return out;
}

nn::Tensor StftMagnitude(const AudioClip& clip, const SpectrogramSpec& spec) {
  std::size_t frames = 0;
  const std::vector<double> power = PowerFrames(clip, spec, &frames);
  const std::size_t bins = spec.num_bins();
  nn::Tensor out({bins, frames});
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) {
      out.at(k, t) = static_cast<float>(std::sqrt(power[t * bins + k]));
    }
  }
  return out;
}

nn::Tensor MelFilterbank(const SpectrogramSpec& spec) {
  spec.Validate();
  const std::size_t bins = spec.num_bins();
  const auto n_mels = static_cast<std::size_t>(spec.n_mels);
  const double mel_lo = HzToMel(spec.fmin);
  const double mel_hi = HzToMel(spec.fmax);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    static_cast<double>(n_mels + 1));
  }
  nn::Tensor fb({n_mels, bins});
  std::vector<double> row(bins);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * spec.sample_rate / spec.n_fft;
      double w = 0.0;
      if (f > lo && f <= center) {
        w = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        w = (hi - f) / (hi - center);
      }
      row[k] = w;
    }
    // The sampled triangle rarely hits its apex exactly; rescale so every
    // row peaks at 1.
    const double peak = *std::max_element(row.begin(), row.end());
    if (peak <= 0.0) {
      throw ValidationError("mel filter " + std::to_string(m) +
                            " covers no FFT bin; use fewer mels or a larger n_fft");
    }
    for (std::size_t k = 0; k < bins; ++k) {
      fb.at(m, k) = static_cast<float>(row[k] / peak);
    }
  }
  return fb;
}

nn::Tensor LogMelSpectrogram(const AudioClip& clip, const SpectrogramSpec& spec) {
  std::size_t frames = 0;
  const std::vector<double> power = PowerFrames(clip, spec, &frames);
  const nn::Tensor fb = MelFilterbank(spec);
  const std::size_t bins = spec.num_bins();
  const auto n_mels = static_cast<std::size_t>(spec.n_mels);

  // Each triangle touches a short run of bins; remember it.
  std::vector<std::pair<std::size_t, std::size_t>> support(n_mels, {0, 0});
  for (std::size_t m = 0; m < n_mels; ++m) {
    std::size_t first = bins, last = 0;
    for (std::size_t k = 0; k < bins; ++k) {
      if (fb.at(m, k) > 0.0f) {
        first = std::min(first, k);
        last = k + 1;
      }
    }
    support[m] = first < last ? std::make_pair(first, last) : std::make_pair(std::size_t{0}, std::size_t{0});
  }

  nn::Tensor out({n_mels, frames});
  for (std::size_t t = 0; t < frames; ++t) {
    const double* p = power.data() + t * bins;
    for (std::size_t m = 0; m < n_mels; ++m) {
      double acc = 0.0;
      for (std::size_t k = support[m].first; k < support[m].second; ++k) {
        acc += static_cast<double>(fb.at(m, k)) * p[k];
      }
      out.at(m, t) = static_cast<float>(std::log(acc + kLogMelFloor));
    }
  }
  return out;
}

nn::Tensor Standardize(const nn::Tensor& values) {
  const std::size_t n = values.size();
  // Shifted accumulation: a constant input yields a mean equal to its value
  // exactly, so it standardizes to exact zeros.
  const double shift = values[0];
  double sum = 0.0;
  for (float v : values.values()) sum += static_cast<double>(v) - shift;
  const double mean = shift + sum / static_cast<double>(n);
  double sq = 0.0;
  for (float v : values.values()) {
    const double d = static_cast<double>(v) - mean;
    sq += d * d;
  }
  const double stddev = std::max(std::sqrt(sq / static_cast<double>(n)), kStdFloor);
  nn::Tensor out(values.shape());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<float>((static_cast<double>(values[i]) - mean) / stddev);
  }
  return out;
}

MelSpectrogram ComputeMelSpectrogram(const AudioClip& excerpt,
                                     const SpectrogramSpec& spec,
                                     std::string source_id) {
  return {Standardize(LogMelSpectrogram(excerpt, spec)), std::move(source_id)};
}

}  // namespace lukthung::audio
