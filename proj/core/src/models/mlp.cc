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

#include "lukthung/models/mlp.h"

#include <random>

#include "lukthung/models/init.h"
#include "lukthung/nn/ops.h"

namespace lukthung::models {

template <typename T>
Mlp<T>::Mlp(std::vector<std::size_t> dims, std::uint64_t seed,
            const std::string& name_prefix)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("mlp needs at least an input width");
  std::mt19937_64 rng(seed);
  const std::size_t layers = dims_.size();
  for (std::size_t i = 0; i < layers; ++i) {
    const std::size_t in = dims_[i];
    const bool output = i + 1 == layers;
    const std::size_t out = output ? 1 : dims_[i + 1];
    const std::string name =
        output ? name_prefix + ".out" : name_prefix + std::to_string(i + 1);
    nn::BasicTensor<T> w({out, in});
    InitNormal(w, in, output ? 1.0 : 2.0, rng);
    weights_.emplace_back(name + ".weight", std::move(w));
    biases_.emplace_back(name + ".bias", nn::BasicTensor<T>({out}));
  }
}

template <typename T>
ModelOutput<T> Mlp<T>::Forward(const Input& input, Cache* cache) const {
  nn::ExpectShape(input, {dims_.front()}, "mlp input");
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.push_back(input);
  }
  nn::BasicTensor<T> h = input;
  const std::size_t hidden = weights_.size() - 1;
  for (std::size_t i = 0; i < hidden; ++i) {
    h = nn::Activate(nn::Dense(h, weights_[i].value, biases_[i].value),
                     nn::Activation::kRelu);
    if (cache != nullptr) cache->activations.push_back(h);
  }
  const nn::BasicTensor<T> z = nn::Dense(h, weights_.back().value, biases_.back().value);
  ModelOutput<T> out;
  out.logit = z[0];
  out.prob = nn::SigmoidScalar(z[0]);
  out.feature = std::move(h);
  return out;
}

template <typename T>
void Mlp<T>::Backward(const Cache& cache, T dlogit) {
  const std::size_t layers = weights_.size();
  nn::BasicTensor<T> grad({1}, std::vector<T>{dlogit});
  for (std::size_t i = layers; i-- > 0;) {
    const nn::BasicTensor<T>& in = cache.activations[i];
    nn::BasicTensor<T> grad_in;
    nn::DenseBackward(in, weights_[i].value, grad, i > 0 ? &grad_in : nullptr,
                      weights_[i].grad, biases_[i].grad);
    if (i == 0) break;
    // in == relu(pre-activation), so in > 0 is the ReLU gate.
    grad = nn::ActivateBackward(in, grad_in, nn::Activation::kRelu);
  }
}

template <typename T>
nn::ParameterList<T> Mlp<T>::Parameters() {
  nn::ParameterList<T> params;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    params.push_back(&weights_[i]);
    params.push_back(&biases_[i]);
  }
  return params;
}

template <typename T>
std::vector<const nn::BasicParameter<T>*> Mlp<T>::Parameters() const {
  std::vector<const nn::BasicParameter<T>*> params;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    params.push_back(&weights_[i]);
    params.push_back(&biases_[i]);
  }
  return params;
}

template class Mlp<float>;
template class Mlp<double>;

}  // namespace lukthung::models
