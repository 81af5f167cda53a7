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

#include <benchmark/benchmark.h>

#include <random>

#include "lukthung/models/spectro_cnn.h"
#include "lukthung/nn/ops.h"

namespace {

using lukthung::nn::Tensor;

Tensor RandomTensor(const lukthung::nn::Shape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  Tensor t(shape);
  for (float& v : t.values()) v = dist(rng);
  return t;
}

// One residual conv: 576 channels, 1 x 7 kernel over 431 frames.
void BM_ResidualConv(benchmark::State& state) {
  const std::size_t channels = state.range(0);
  const Tensor x = RandomTensor({channels, 1, 431}, 1);
  const Tensor w = RandomTensor({channels, channels, 1, 7}, 2);
  const Tensor b = RandomTensor({channels}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lukthung::nn::Conv2d(x, w, b));
  state.counters["GFLOP/s"] = benchmark::Counter(2.0 * channels * channels * 7 * 431,
                                                 benchmark::Counter::kIsIterationInvariantRate,
                                                 benchmark::Counter::kIs1000);
}
BENCHMARK(BM_ResidualConv)->Arg(64)->Arg(576)->Unit(benchmark::kMillisecond);

// Timbral front-end group: 32 filters of 115 x 7 on a 128 x 431 input.
void BM_FilterBankGroup(benchmark::State& state) {
  const Tensor x = RandomTensor({1, 128, 431}, 4);
  const Tensor w = RandomTensor({32, 1, 115, 7}, 5);
  const Tensor b = RandomTensor({32}, 6);
  for (auto _ : state) benchmark::DoNotOptimize(lukthung::nn::ConvReluMaxPoolFreq(x, w, b));
}
BENCHMARK(BM_FilterBankGroup)->Unit(benchmark::kMillisecond);

void BM_SpectroCnnForward(benchmark::State& state) {
  const lukthung::models::SpectroCnn<float> cnn(lukthung::models::SpectroCnnConfig{}, 7);
  const Tensor x = RandomTensor({128, 431}, 8);
  for (auto _ : state) benchmark::DoNotOptimize(cnn.Forward(x));
}
BENCHMARK(BM_SpectroCnnForward)->Unit(benchmark::kMillisecond);

void BM_SpectroCnnTrainStep(benchmark::State& state) {
  lukthung::models::SpectroCnn<float> cnn(lukthung::models::SpectroCnnConfig{}, 9);
  const Tensor x = RandomTensor({128, 431}, 10);
  lukthung::models::SpectroCnn<float>::Cache cache;
  for (auto _ : state) {
    const auto out = cnn.Forward(x, &cache);
    cnn.Backward(cache, out.prob - 1.0f);
  }
}
BENCHMARK(BM_SpectroCnnTrainStep)->Unit(benchmark::kMillisecond);

}  // namespace
