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

#ifndef LUKTHUNG_NN_PARAMETER_H_
#define LUKTHUNG_NN_PARAMETER_H_

#include <string>
#include <utility>
#include <vector>

#include "lukthung/nn/tensor.h"

namespace lukthung::nn {

// A trainable tensor together with its accumulated gradient.
template <typename T>
struct BasicParameter {
  BasicParameter() = default;
  BasicParameter(std::string name, BasicTensor<T> value)
      : name(std::move(name)),
        value(std::move(value)),
        grad(BasicTensor<T>::Zeros(this->value.shape())) {}

  void ZeroGrad() { grad.Fill(T{0}); }

  std::string name;
  BasicTensor<T> value;
  BasicTensor<T> grad;
};

using Parameter = BasicParameter<float>;
using ParameterD = BasicParameter<double>;

template <typename T>
using ParameterList = std::vector<BasicParameter<T>*>;

template <typename T>
void ZeroGrads(const ParameterList<T>& params) {
  for (auto* p : params) p->ZeroGrad();
}

// Multiplies every gradient by `factor`; used to average mini-batch sums.
template <typename T>
void ScaleGrads(const ParameterList<T>& params, T factor) {
  for (auto* p : params) {
    for (T& g : p->grad.values()) g *= factor;
  }
}

}  // namespace lukthung::nn

#endif  // LUKTHUNG_NN_PARAMETER_H_
