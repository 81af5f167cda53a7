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

#include "lukthung/audio/resample.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "lukthung/errors.h"

namespace lukthung::audio {
namespace {

// Above this many polyphase branches the kernel is evaluated per sample.
constexpr std::int64_t kMaxTablePhases = 4096;

class SincKernel {
 public:
  SincKernel(double cutoff, const ResamplerOptions& options)
      : cutoff_(cutoff),
        half_width_(options.zero_crossings / cutoff),
        beta_(options.kaiser_beta),
        norm_(1.0 / std::cyl_bessel_i(0.0, options.kaiser_beta)) {}

  double half_width() const { return half_width_; }

  // Impulse response at offset t (in source samples).
  double operator()(double t) const {
    const double r = t / half_width_;
    if (std::abs(r) >= 1.0) return 0.0;
    const double x = std::numbers::pi * cutoff_ * t;
    const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
    const double window = std::cyl_bessel_i(0.0, beta_ * std::sqrt(1.0 - r * r)) * norm_;
    return cutoff_ * sinc * window;
  }

 private:
  double cutoff_;
  double half_width_;
  double beta_;
  double norm_;
};

}  // namespace

AudioClip Resample(const AudioClip& clip, int target_rate,
                   const ResamplerOptions& options) {
  if (target_rate <= 0) throw ValidationError("target sample rate must be positive");
  if (clip.sample_rate <= 0) throw ValidationError("clip sample rate must be positive");
  if (clip.sample_rate == target_rate) return clip;

  const std::int64_t src = clip.sample_rate;
  const std::int64_t dst = target_rate;
  const std::int64_t g = std::gcd(src, dst);
  const std::int64_t up = dst / g;    // output samples per period
  const std::int64_t down = src / g;  // input samples per period
  const auto n_in = static_cast<std::int64_t>(clip.samples.size());
  const std::int64_t n_out = (n_in * dst + src / 2) / src;

  const double cutoff = options.rolloff * std::min(1.0, static_cast<double>(dst) / src);
  const SincKernel kernel(cutoff, options);
  const auto reach = static_cast<std::int64_t>(std::ceil(kernel.half_width()));
  const std::int64_t taps = 2 * reach + 1;

  // Output k sits at source position (k * down) / up = base + phase / up.
  // The tap for input base + m (m in [-reach, reach]) weighs
  // kernel(phase / up - m).
  std::vector<double> table;
  const bool use_table = up <= kMaxTablePhases;
  if (use_table) {
    table.resize(static_cast<std::size_t>(up * taps));
    for (std::int64_t p = 0; p < up; ++p) {
      const double frac = static_cast<double>(p) / up;
      for (std::int64_t m = -reach; m <= reach; ++m) {
        table[p * taps + (m + reach)] = kernel(frac - m);
      }
    }
  }

  AudioClip out;
  out.sample_rate = target_rate;
  out.samples.resize(static_cast<std::size_t>(n_out));
  std::vector<double> scratch(use_table ? 0 : taps);
  for (std::int64_t k = 0; k < n_out; ++k) {
    const std::int64_t num = k * down;
    const std::int64_t base = num / up;
    const std::int64_t phase = num % up;
    const double* h;
    if (use_table) {
      h = table.data() + phase * taps;
    } else {
      const double frac = static_cast<double>(phase) / up;
      for (std::int64_t m = -reach; m <= reach; ++m) scratch[m + reach] = kernel(frac - m);
      h = scratch.data();
    }
    const std::int64_t lo = std::max<std::int64_t>(-reach, -base);
    const std::int64_t hi = std::min<std::int64_t>(reach, n_in - 1 - base);
    double acc = 0.0;
    for (std::int64_t m = lo; m <= hi; ++m) {
      acc += h[m + reach] * clip.samples[static_cast<std::size_t>(base + m)];
    }
    out.samples[static_cast<std::size_t>(k)] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace lukthung::audio
