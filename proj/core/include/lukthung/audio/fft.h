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

#ifndef LUKTHUNG_AUDIO_FFT_H_
#define LUKTHUNG_AUDIO_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lukthung::audio {

// In-place iterative radix-2 FFT for a fixed power-of-two size.
class Fft {
 public:
  explicit Fft(std::size_t size);

  std::size_t size() const { return size_; }

  // Forward transform, X[k] = sum_n x[n] exp(-2 pi i k n / N).
  void Forward(std::span<std::complex<double>> data) const;

  // |X[k]|^2 for k in [0, N/2] of a real frame of length N.
  void PowerSpectrum(std::span<const double> frame, std::span<double> power) const;

 private:
  std::size_t size_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;
};

}  // namespace lukthung::audio

#endif  // LUKTHUNG_AUDIO_FFT_H_
