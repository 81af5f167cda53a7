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

#ifndef LUKTHUNG_NN_ADAM_H_
#define LUKTHUNG_NN_ADAM_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "lukthung/nn/parameter.h"

namespace lukthung::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First and second moment estimates for one parameter.
template <typename T>
struct AdamState {
  explicit AdamState(const Shape& shape)
      : m(BasicTensor<T>::Zeros(shape)), v(BasicTensor<T>::Zeros(shape)) {}

  std::size_t step = 0;
  BasicTensor<T> m;
  BasicTensor<T> v;
};

// One bias-corrected Adam update of `param` from its current gradient.
template <typename T>
void AdamStep(BasicParameter<T>& param, AdamState<T>& state,
              const AdamConfig& config) {
  ExpectShape(state.m, param.value.shape(), "adam state for " + param.name);
  ++state.step;
  const double t = static_cast<double>(state.step);
  const T b1 = static_cast<T>(config.beta1);
  const T b2 = static_cast<T>(config.beta2);
  const T c1 = static_cast<T>(1.0 / (1.0 - std::pow(config.beta1, t)));
  const T c2 = static_cast<T>(1.0 / (1.0 - std::pow(config.beta2, t)));
  const T lr = static_cast<T>(config.lr);
  const T eps = static_cast<T>(config.eps);
  T* w = param.value.data();
  const T* g = param.grad.data();
  T* m = state.m.data();
  T* v = state.v.data();
  for (std::size_t i = 0, n = param.value.size(); i < n; ++i) {
    m[i] = b1 * m[i] + (T{1} - b1) * g[i];
    v[i] = b2 * v[i] + (T{1} - b2) * g[i] * g[i];
    w[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
  }
}

// Adam over a fixed list of parameters.
template <typename T>
class Adam {
 public:
  Adam(ParameterList<T> params, AdamConfig config)
      : params_(std::move(params)), config_(config) {
    states_.reserve(params_.size());
    for (auto* p : params_) states_.emplace_back(p->value.shape());
  }

  void Step() {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      AdamStep(*params_[i], states_[i], config_);
    }
  }

  void ZeroGrad() { ZeroGrads(params_); }
  const ParameterList<T>& params() const { return params_; }

 private:
  ParameterList<T> params_;
  AdamConfig config_;
  std::vector<AdamState<T>> states_;
};

}  // namespace lukthung::nn

#endif  // LUKTHUNG_NN_ADAM_H_
