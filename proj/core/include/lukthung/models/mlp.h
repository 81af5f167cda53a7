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

#ifndef LUKTHUNG_MODELS_MLP_H_
#define LUKTHUNG_MODELS_MLP_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lukthung/nn/parameter.h"
#include "lukthung/nn/tensor.h"

namespace lukthung::models {

// Probability, its logit and the representation feeding the output node.
template <typename T>
struct ModelOutput {
  T logit{};
  T prob{};
  nn::BasicTensor<T> feature;
};

// Fully connected binary classifier: ReLU hidden layers, one sigmoid output.
// The feature is the last hidden layer's activation.
template <typename T>
class Mlp {
 public:
  using Input = nn::BasicTensor<T>;

  struct Cache {
    std::vector<nn::BasicTensor<T>> activations;  // input, then each hidden
  };

  Mlp() = default;
  // dims = {input, hidden..., } (the single output unit is implied).
  Mlp(std::vector<std::size_t> dims, std::uint64_t seed,
      const std::string& name_prefix = "dense");

  ModelOutput<T> Forward(const Input& input, Cache* cache = nullptr) const;
  // Accumulates parameter gradients for d(loss)/d(logit) = dlogit.
  void Backward(const Cache& cache, T dlogit);

  nn::ParameterList<T> Parameters();
  std::vector<const nn::BasicParameter<T>*> Parameters() const;

  std::size_t input_dim() const { return dims_.front(); }
  std::size_t feature_dim() const { return dims_.back(); }
  const std::vector<std::size_t>& dims() const { return dims_; }

 private:
  std::vector<std::size_t> dims_;
  // weights[i], biases[i] map layer i; the last pair is the output layer.
  std::vector<nn::BasicParameter<T>> weights_;
  std::vector<nn::BasicParameter<T>> biases_;
};

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_MLP_H_
