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

#ifndef LUKTHUNG_MODELS_SPECTRO_CNN_H_
#define LUKTHUNG_MODELS_SPECTRO_CNN_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lukthung/models/filter_bank.h"
#include "lukthung/models/mlp.h"
#include "lukthung/nn/ops.h"
#include "lukthung/nn/parameter.h"

namespace lukthung::models {

struct SpectroCnnConfig {
  std::size_t input_bins = 128;
  std::size_t input_frames = 431;
  FilterBankSpec filter_bank = FilterBankSpec::Default();
  std::size_t residual_layers = 3;
  std::size_t residual_kernel = 7;  // taps along time
  std::size_t feature_dim = 700;

  // A 16 x 32 input variant with a proportionally shrunken bank, small
  // enough for exhaustive finite-difference checks.
  static SpectroCnnConfig Truncated();

  std::size_t channels() const { return filter_bank.total_channels(); }
  // Global max + global mean over time.
  std::size_t pooled_dim() const { return 2 * channels(); }

  void Validate() const;
  // Stable description used in checkpoint metadata and architecture hashes.
  std::string Describe() const;
};

// Filter bank -> residual block over time -> global time pooling -> dense
// feature layer -> sigmoid output.
//
//   x  = concat_g maxpool_freq(relu(conv_g(input)))      [C, W]
//   y  = relu(x + conv_c(relu(conv_b(relu(conv_a(x))))))  [C, W]
//   p  = [max_t y, mean_t y]                              [2C]
//   f  = relu(dense(p))                                   [feature_dim]
//   pr = sigmoid(dense(f))
template <typename T>
class SpectroCnn {
 public:
  using Input = nn::BasicTensor<T>;  // [input_bins, W]

  struct Cache {
    nn::BasicTensor<T> input;                  // [1, H, W]
    std::vector<nn::PoolResult<T>> bank;       // per group
    std::vector<nn::BasicTensor<T>> residual;  // x, relu(a_1), ..., y
    std::vector<std::uint32_t> time_argmax;    // per channel
    nn::BasicTensor<T> pooled;
    nn::BasicTensor<T> feature;
  };

  SpectroCnn() = default;
  SpectroCnn(SpectroCnnConfig config, std::uint64_t seed);

  // The time axis may be any length >= 1; the trained width is recorded in
  // the config but global pooling makes the head width-independent.
  ModelOutput<T> Forward(const Input& spectrogram, Cache* cache = nullptr) const;
  void Backward(const Cache& cache, T dlogit);

  nn::ParameterList<T> Parameters();
  std::vector<const nn::BasicParameter<T>*> Parameters() const;

  const SpectroCnnConfig& config() const { return config_; }

 private:
  struct Conv {
    nn::BasicParameter<T> weight;
    nn::BasicParameter<T> bias;
  };

  SpectroCnnConfig config_;
  std::vector<Conv> bank_;
  std::vector<Conv> residual_;
  Conv head_;
  Conv out_;
};

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_SPECTRO_CNN_H_
