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

#include "lukthung/audio/fft.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "lukthung/errors.h"

namespace lukthung::audio {

Fft::Fft(std::size_t size) : size_(size) {
  if (size < 2 || !std::has_single_bit(size)) {
    throw ValidationError("FFT size must be a power of two >= 2, got " +
                          std::to_string(size));
  }
  const int bits = std::countr_zero(size);
  bit_reverse_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / size;
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft::Forward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) {
    throw ValidationError("FFT input length " + std::to_string(data.size()) +
                          " != size " + std::to_string(size_));
  }
  for (std::size_t i = 0; i < size_; ++i) {
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  }
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> t = twiddles_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

void Fft::PowerSpectrum(std::span<const double> frame,
                        std::span<double> power) const {
  if (frame.size() != size_ || power.size() != size_ / 2 + 1) {
    throw ValidationError("power spectrum buffers do not match FFT size");
  }
  std::vector<std::complex<double>> buf(frame.begin(), frame.end());
  Forward(buf);
  for (std::size_t k = 0; k <= size_ / 2; ++k) power[k] = std::norm(buf[k]);
}

}  // namespace lukthung::audio
