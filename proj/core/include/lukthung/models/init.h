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

#ifndef LUKTHUNG_MODELS_INIT_H_
#define LUKTHUNG_MODELS_INIT_H_

#include <cmath>
#include <random>

#include "lukthung/nn/tensor.h"

namespace lukthung::models {

// Zero-mean normal initialization with the given fan-in; gain 2 is He
// initialization for ReLU layers, gain 1 for the sigmoid output.
template <typename T>
void InitNormal(nn::BasicTensor<T>& t, std::size_t fan_in, double gain,
                std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(gain / static_cast<double>(fan_in)));
  for (T& v : t.values()) v = static_cast<T>(dist(rng));
}

}  // namespace lukthung::models

#endif  // LUKTHUNG_MODELS_INIT_H_
