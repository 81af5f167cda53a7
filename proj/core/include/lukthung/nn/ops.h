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

#ifndef LUKTHUNG_NN_OPS_H_
#define LUKTHUNG_NN_OPS_H_

#include <cstdint>
#include <vector>

#include "lukthung/nn/tensor.h"

namespace lukthung::nn {

// All convolutions here use the same geometry: stride 1, no padding along the
// frequency (H) axis and zero "same" padding along the time (W) axis, so
//   out[c, i, j] = bias[c] + sum_{ci, a, b} in[ci, i + a, j + b - kW / 2]
//                                         * w[c, ci, a, b]
// with out of shape [C_out, H - kH + 1, W].

// input [C_in, H, W], weights [C_out, C_in, kH, kW], bias [C_out].
template <typename T>
BasicTensor<T> Conv2d(const BasicTensor<T>& input,
                      const BasicTensor<T>& weights,
                      const BasicTensor<T>& bias);

// Accumulates into grad_weights / grad_bias. If grad_input is non-null it is
// overwritten with d(loss)/d(input).
template <typename T>
void Conv2dBackward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                    const BasicTensor<T>& grad_output,
                    BasicTensor<T>* grad_input, BasicTensor<T>& grad_weights,
                    BasicTensor<T>& grad_bias);

template <typename T>
struct PoolResult {
  BasicTensor<T> output;               // [C, 1, W]
  std::vector<std::uint32_t> argmax;   // frequency row per (c, j), size C*W
};

// Max over the frequency axis. Ties go to the lowest frequency index.
template <typename T>
PoolResult<T> MaxPoolFreq(const BasicTensor<T>& input);

// Routes each column's gradient to its argmax row. Returns [C, H, W].
template <typename T>
BasicTensor<T> MaxPoolFreqBackward(const BasicTensor<T>& grad_output,
                                   const std::vector<std::uint32_t>& argmax,
                                   std::size_t height);

// Fused Conv2d -> ReLU -> MaxPoolFreq. Produces the same values as running
// the three ops in sequence but never materializes the full conv output,
// and its backward only visits each column's argmax row. Used for the
// single-channel filter-bank front end where the conv output is large.
template <typename T>
PoolResult<T> ConvReluMaxPoolFreq(const BasicTensor<T>& input,
                                  const BasicTensor<T>& weights,
                                  const BasicTensor<T>& bias);

// grad_output is d(loss)/d(pooled) of shape [C_out, 1, W]. Accumulates into
// grad_weights / grad_bias and, if non-null, overwrites grad_input.
template <typename T>
void ConvReluMaxPoolFreqBackward(const BasicTensor<T>& input,
                                 const BasicTensor<T>& weights,
                                 const PoolResult<T>& forward,
                                 const BasicTensor<T>& grad_output,
                                 BasicTensor<T>* grad_input,
                                 BasicTensor<T>& grad_weights,
                                 BasicTensor<T>& grad_bias);

// input [N], weights [M, N], bias [M] -> [M].
template <typename T>
BasicTensor<T> Dense(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                     const BasicTensor<T>& bias);

template <typename T>
void DenseBackward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                   const BasicTensor<T>& grad_output,
                   BasicTensor<T>* grad_input, BasicTensor<T>& grad_weights,
                   BasicTensor<T>& grad_bias);

enum class Activation { kRelu, kSigmoid };

template <typename T>
T SigmoidScalar(T x);

template <typename T>
BasicTensor<T> Activate(const BasicTensor<T>& input, Activation kind);

// For kRelu pass the forward input, for kSigmoid the forward output.
template <typename T>
BasicTensor<T> ActivateBackward(const BasicTensor<T>& saved,
                                const BasicTensor<T>& grad_output,
                                Activation kind);

// Probabilities are clamped to [kBceEpsilon, 1 - kBceEpsilon] before the log.
inline constexpr double kBceEpsilon = 1e-7;

// -[pos_weight * t * ln(p) + (1 - t) * ln(1 - p)]. target must be 0 or 1.
double BceLoss(double pred, int target, double pos_weight = 1.0);

// d(BceLoss(sigmoid(logit)))/d(logit) = (1 - t) * p - pos_weight * t * (1 - p).
double BceLogitGrad(double logit, int target, double pos_weight = 1.0);

}  // namespace lukthung::nn

#endif  // LUKTHUNG_NN_OPS_H_
