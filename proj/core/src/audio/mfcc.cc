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

#include "lukthung/audio/mfcc.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "lukthung/errors.h"

namespace lukthung::audio {

nn::Tensor MfccStats(const nn::Tensor& log_mel, std::size_t n_coeffs) {
  if (log_mel.rank() != 2) {
    throw ShapeError("mfcc input must be [n_mels, T], got " +
                     nn::ShapeToString(log_mel.shape()));
  }
  const std::size_t n_mels = log_mel.dim(0);
  const std::size_t frames = log_mel.dim(1);
  if (frames < 2) {
    throw ValidationError("mfcc statistics need at least 2 frames, got " +
                          std::to_string(frames));
  }
  if (n_coeffs == 0 || n_coeffs >= n_mels) {
    throw ValidationError("n_coeffs must lie in [1, n_mels)");
  }

  // basis[k][n] for k = 1..n_coeffs.
  std::vector<double> basis(n_coeffs * n_mels);
  const double scale = std::sqrt(2.0 / static_cast<double>(n_mels));
  for (std::size_t k = 1; k <= n_coeffs; ++k) {
    for (std::size_t n = 0; n < n_mels; ++n) {
      basis[(k - 1) * n_mels + n] =
          scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                           (2.0 * static_cast<double>(n) + 1.0) /
                           (2.0 * static_cast<double>(n_mels)));
    }
  }

  std::vector<double> coeffs(n_coeffs * frames);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < n_coeffs; ++k) {
      double acc = 0.0;
      for (std::size_t n = 0; n < n_mels; ++n) {
        acc += basis[k * n_mels + n] * log_mel.at(n, t);
      }
      coeffs[k * frames + t] = acc;
    }
  }

  nn::Tensor out({2 * n_coeffs});
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    const double* c = coeffs.data() + k * frames;
    // Shifted by the first frame so a coefficient that is constant over time
    // gets exactly zero deviation.
    double mean = 0.0;
    for (std::size_t t = 0; t < frames; ++t) mean += c[t] - c[0];
    mean = c[0] + mean / static_cast<double>(frames);
    double sq = 0.0;
    for (std::size_t t = 0; t < frames; ++t) sq += (c[t] - mean) * (c[t] - mean);
    out[k] = static_cast<float>(mean);
    out[n_coeffs + k] = static_cast<float>(std::sqrt(sq / static_cast<double>(frames - 1)));
  }
  return out;
}

}  // namespace lukthung::audio
