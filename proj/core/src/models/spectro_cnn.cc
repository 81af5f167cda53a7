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

#include "lukthung/models/spectro_cnn.h"

#include <algorithm>
#include <random>

#include "lukthung/errors.h"
#include "lukthung/models/init.h"

namespace lukthung::models {

SpectroCnnConfig SpectroCnnConfig::Truncated() {
  using K = FilterKind;
  SpectroCnnConfig c;
  c.input_bins = 16;
  c.input_frames = 32;
  c.filter_bank = {{
      {K::kTimbral, 13, 7, 2},
      {K::kTimbral, 13, 3, 2},
      {K::kTimbral, 13, 1, 2},
      {K::kTimbral, 6, 7, 2},
      {K::kTimbral, 6, 3, 2},
      {K::kTimbral, 6, 1, 2},
      {K::kTemporal, 3, 4, 2},
      {K::kTemporal, 3, 8, 2},
      {K::kTemporal, 3, 16, 2},
      {K::kTemporal, 3, 21, 2},
  }};
  return c;
}

void SpectroCnnConfig::Validate() const {
  if (filter_bank.groups.empty()) throw ValidationError("filter bank has no groups");
  for (const auto& g : filter_bank.groups) {
    if (g.freq_bins > input_bins) {
      throw ValidationError("filter height " + std::to_string(g.freq_bins) +
                            " exceeds input height " + std::to_string(input_bins));
    }
  }
  if (residual_layers == 0 || residual_kernel == 0 || feature_dim == 0 ||
      input_frames == 0) {
    throw ValidationError("spectro-cnn dimensions must be positive");
  }
}

std::string SpectroCnnConfig::Describe() const {
  return "spectro_cnn;input=" + std::to_string(input_bins) + "x" +
         std::to_string(input_frames) + ";bank=" + filter_bank.ToString() +
         ";residual=" + std::to_string(residual_layers) + "x(1x" +
         std::to_string(residual_kernel) + ")@" + std::to_string(channels()) +
         ";pool=max+mean;feature=" + std::to_string(feature_dim);
}

template <typename T>
SpectroCnn<T>::SpectroCnn(SpectroCnnConfig config, std::uint64_t seed)
    : config_(std::move(config)) {
  config_.Validate();
  std::mt19937_64 rng(seed);
  const std::size_t channels = config_.channels();
  for (std::size_t i = 0; i < config_.filter_bank.groups.size(); ++i) {
    const FilterGroup& g = config_.filter_bank.groups[i];
    const std::string name =
        "bank." + std::to_string(i) + "." +
        (g.kind == FilterKind::kTimbral ? "timbral_" : "temporal_") +
        std::to_string(g.freq_bins) + "x" + std::to_string(g.time_units);
    nn::BasicTensor<T> w({g.n_filters, 1, g.freq_bins, g.time_units});
    InitNormal(w, g.freq_bins * g.time_units, 2.0, rng);
    bank_.push_back({{name + ".weight", std::move(w)},
                     {name + ".bias", nn::BasicTensor<T>({g.n_filters})}});
  }
  for (std::size_t l = 0; l < config_.residual_layers; ++l) {
    const std::string name = "residual.conv" + std::to_string(l);
    nn::BasicTensor<T> w({channels, channels, 1, config_.residual_kernel});
    // The last conv starts at zero so the block begins as the identity on
    // the filter-bank features; the earlier convs still receive gradient
    // through it after the first update.
    if (l + 1 < config_.residual_layers) {
      InitNormal(w, channels * config_.residual_kernel, 2.0, rng);
    }
    residual_.push_back({{name + ".weight", std::move(w)},
                         {name + ".bias", nn::BasicTensor<T>({channels})}});
  }
  nn::BasicTensor<T> hw({config_.feature_dim, config_.pooled_dim()});
  InitNormal(hw, config_.pooled_dim(), 2.0, rng);
  head_ = {{"head.dense.weight", std::move(hw)},
           {"head.dense.bias", nn::BasicTensor<T>({config_.feature_dim})}};
  nn::BasicTensor<T> ow({1, config_.feature_dim});
  InitNormal(ow, config_.feature_dim, 1.0, rng);
  out_ = {{"head.out.weight", std::move(ow)}, {"head.out.bias", nn::BasicTensor<T>({1})}};
}

template <typename T>
ModelOutput<T> SpectroCnn<T>::Forward(const Input& spectrogram, Cache* cache) const {
  if (spectrogram.rank() != 2 || spectrogram.dim(0) != config_.input_bins) {
    throw ShapeError("spectro-cnn input: expected [" + std::to_string(config_.input_bins) +
                     ", W], got " + nn::ShapeToString(spectrogram.shape()));
  }
  const std::size_t width = spectrogram.dim(1);
  const std::size_t channels = config_.channels();
  nn::BasicTensor<T> input = spectrogram.Reshaped({1, config_.input_bins, width});

  nn::BasicTensor<T> x({channels, 1, width});
  std::vector<nn::PoolResult<T>> pools;
  pools.reserve(bank_.size());
  std::size_t offset = 0;
  for (const Conv& conv : bank_) {
    nn::PoolResult<T> pr =
        nn::ConvReluMaxPoolFreq(input, conv.weight.value, conv.bias.value);
    std::copy(pr.output.values().begin(), pr.output.values().end(),
              x.values().begin() + static_cast<std::ptrdiff_t>(offset * width));
    offset += pr.output.dim(0);
    pools.push_back(std::move(pr));
  }

  std::vector<nn::BasicTensor<T>> residual{x};
  nn::BasicTensor<T> h = x;
  for (std::size_t l = 0; l + 1 < residual_.size(); ++l) {
    h = nn::Activate(nn::Conv2d(h, residual_[l].weight.value, residual_[l].bias.value),
                     nn::Activation::kRelu);
    residual.push_back(h);
  }
  nn::BasicTensor<T> y =
      nn::Conv2d(h, residual_.back().weight.value, residual_.back().bias.value);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::max(y[i] + x[i], T{0});

  nn::BasicTensor<T> pooled({2 * channels});
  std::vector<std::uint32_t> time_argmax(channels, 0);
  for (std::size_t c = 0; c < channels; ++c) {
    const T* row = y.data() + c * width;
    T best = row[0];
    T sum{0};
    for (std::size_t j = 0; j < width; ++j) {
      if (row[j] > best) {
        best = row[j];
        time_argmax[c] = static_cast<std::uint32_t>(j);
      }
      sum += row[j];
    }
    pooled[c] = best;
    pooled[channels + c] = sum / static_cast<T>(width);
  }

  nn::BasicTensor<T> feature =
      nn::Activate(nn::Dense(pooled, head_.weight.value, head_.bias.value),
                   nn::Activation::kRelu);
  const nn::BasicTensor<T> z = nn::Dense(feature, out_.weight.value, out_.bias.value);

  ModelOutput<T> out;
  out.logit = z[0];
  out.prob = nn::SigmoidScalar(z[0]);
  out.feature = feature;
  if (cache != nullptr) {
    residual.push_back(std::move(y));
    cache->input = std::move(input);
    cache->bank = std::move(pools);
    cache->residual = std::move(residual);
    cache->time_argmax = std::move(time_argmax);
    cache->pooled = std::move(pooled);
    cache->feature = std::move(feature);
  }
  return out;
}

template <typename T>
void SpectroCnn<T>::Backward(const Cache& cache, T dlogit) {
  const std::size_t channels = config_.channels();
  const std::size_t width = cache.input.dim(2);

  nn::BasicTensor<T> grad_feature;
  nn::DenseBackward(cache.feature, out_.weight.value,
                    nn::BasicTensor<T>({1}, std::vector<T>{dlogit}), &grad_feature,
                    out_.weight.grad, out_.bias.grad);
  grad_feature = nn::ActivateBackward(cache.feature, grad_feature, nn::Activation::kRelu);
  nn::BasicTensor<T> grad_pooled;
  nn::DenseBackward(cache.pooled, head_.weight.value, grad_feature, &grad_pooled,
                    head_.weight.grad, head_.bias.grad);

  // Through global max/mean pooling and the output ReLU of the block.
  const nn::BasicTensor<T>& y = cache.residual.back();
  nn::BasicTensor<T> grad({channels, 1, width});
  const T inv_width = T{1} / static_cast<T>(width);
  for (std::size_t c = 0; c < channels; ++c) {
    T* g = grad.data() + c * width;
    const T mean_grad = grad_pooled[channels + c] * inv_width;
    for (std::size_t j = 0; j < width; ++j) g[j] = mean_grad;
    g[cache.time_argmax[c]] += grad_pooled[c];
    const T* yr = y.data() + c * width;
    for (std::size_t j = 0; j < width; ++j) {
      if (!(yr[j] > T{0})) g[j] = T{0};
    }
  }

  // grad is now d/d(x + F(x)); the skip path passes it straight to x.
  nn::BasicTensor<T> grad_x = grad;
  for (std::size_t l = residual_.size(); l-- > 0;) {
    const nn::BasicTensor<T>& layer_in = cache.residual[l];
    nn::BasicTensor<T> grad_in;
    nn::Conv2dBackward(layer_in, residual_[l].weight.value, grad, &grad_in,
                       residual_[l].weight.grad, residual_[l].bias.grad);
    if (l == 0) {
      for (std::size_t i = 0; i < grad_x.size(); ++i) grad_x[i] += grad_in[i];
    } else {
      grad = nn::ActivateBackward(layer_in, grad_in, nn::Activation::kRelu);
    }
  }

  std::size_t offset = 0;
  for (std::size_t gi = 0; gi < bank_.size(); ++gi) {
    const std::size_t n = bank_[gi].weight.value.dim(0);
    nn::BasicTensor<T> slice({n, 1, width});
    std::copy_n(grad_x.data() + offset * width, n * width, slice.data());
    nn::ConvReluMaxPoolFreqBackward(cache.input, bank_[gi].weight.value, cache.bank[gi],
                                    slice, static_cast<nn::BasicTensor<T>*>(nullptr), bank_[gi].weight.grad,
                                    bank_[gi].bias.grad);
    offset += n;
  }
}

template <typename T>
nn::ParameterList<T> SpectroCnn<T>::Parameters() {
  nn::ParameterList<T> params;
  for (Conv& c : bank_) {
    params.push_back(&c.weight);
    params.push_back(&c.bias);
  }
  for (Conv& c : residual_) {
    params.push_back(&c.weight);
    params.push_back(&c.bias);
  }
  for (Conv* c : {&head_, &out_}) {
    params.push_back(&c->weight);
    params.push_back(&c->bias);
  }
  return params;
}

template <typename T>
std::vector<const nn::BasicParameter<T>*> SpectroCnn<T>::Parameters() const {
  auto mutable_params = const_cast<SpectroCnn*>(this)->Parameters();
  return {mutable_params.begin(), mutable_params.end()};
}

template class SpectroCnn<float>;
template class SpectroCnn<double>;

}  // namespace lukthung::models
