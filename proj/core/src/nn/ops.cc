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

#include "lukthung/nn/ops.h"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace lukthung::nn {
namespace {

template <typename T>
using RowMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatrixMap = Eigen::Map<RowMatrix<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using ConstMatrixMap = Eigen::Map<const RowMatrix<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using VectorMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using ConstVectorMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;

// Forward convolutions run a register-blocked direct kernel: each tile holds
// kTileChannels output channels by kTilePackets SIMD packets of consecutive
// output columns and streams the input once per (c_in, a, b) tap. Output
// rows are computed at a padded width that is a multiple of the tile width;
// the extra columns are discarded.
constexpr int kTileChannels = 4;
#if defined(__GNUC__) && !defined(__clang__)
#define LUKTHUNG_UNROLL _Pragma("GCC unroll 8")
#elif defined(__clang__)
#define LUKTHUNG_UNROLL _Pragma("unroll")
#else
#define LUKTHUNG_UNROLL
#endif
#if defined(__AVX512F__)
constexpr int kTilePackets = 6;
#else
constexpr int kTilePackets = 3;
#endif

template <typename T>
using Packet = typename Eigen::internal::packet_traits<T>::type;

template <typename T>
constexpr std::size_t kTileWidth =
    static_cast<std::size_t>(Eigen::internal::packet_traits<T>::size) * kTilePackets;

std::size_t RoundUp(std::size_t n, std::size_t multiple) {
  return (n + multiple - 1) / multiple * multiple;
}

// A zero-padded copy of a [C, H, W] tensor with rows of length `stride`,
// `top` blank rows above and `left` blank columns before each row. A little
// slack at the end keeps strided reads of the last row in bounds.
template <typename T>
struct Padded {
  std::vector<T> data;
  std::size_t stride = 0;
  std::size_t height = 0;
  std::size_t plane() const { return stride * height; }
};

template <typename T>
Padded<T> PadInput(const T* src, std::size_t channels, std::size_t h, std::size_t w,
                   std::size_t top, std::size_t bottom, std::size_t left,
                   std::size_t stride, std::size_t slack) {
  Padded<T> p;
  p.stride = stride;
  p.height = top + h + bottom;
  p.data.assign(channels * p.plane() + slack, T{0});
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t i = 0; i < h; ++i) {
      std::copy_n(src + (c * h + i) * w, w,
                  p.data.data() + c * p.plane() + (top + i) * stride + left);
    }
  }
  return p;
}

struct CorrelateShape {
  std::size_t c_in, c_out, k_h, k_w;
  std::size_t out_h, out_w;  // out_w is a multiple of the tile width
};

// Computes CB output channels starting at c0 for one output row and the
// columns [0, tile width) relative to x and out. tap_offsets[t] is the input
// offset of kernel tap t = a * k_w + b. Everything the inner loop touches is
// passed as plain values so the accumulators stay in registers.
template <typename T, int CB>
void CorrelateTile(const T* x, std::size_t x_plane, const std::size_t* tap_offsets,
                   std::size_t taps, const T* w, std::size_t c_in, T* out,
                   std::size_t out_plane) {
  using P = Packet<T>;
  constexpr int L = Eigen::internal::packet_traits<T>::size;
  const std::size_t k_per_out = c_in * taps;
  P acc[CB][kTilePackets];
  LUKTHUNG_UNROLL
  for (int cc = 0; cc < CB; ++cc) {
    LUKTHUNG_UNROLL
    for (int k = 0; k < kTilePackets; ++k) acc[cc][k] = Eigen::internal::pset1<P>(T{0});
  }
  for (std::size_t ci = 0; ci < c_in; ++ci) {
    const T* xc = x + ci * x_plane;
    const T* wc = w + ci * taps;
    for (std::size_t t = 0; t < taps; ++t) {
      const T* xr = xc + tap_offsets[t];
      P xv[kTilePackets];
      LUKTHUNG_UNROLL
      for (int k = 0; k < kTilePackets; ++k) xv[k] = Eigen::internal::ploadu<P>(xr + k * L);
      LUKTHUNG_UNROLL
      for (int cc = 0; cc < CB; ++cc) {
        const P wv = Eigen::internal::pset1<P>(wc[cc * k_per_out + t]);
        LUKTHUNG_UNROLL
        for (int k = 0; k < kTilePackets; ++k) {
          acc[cc][k] = Eigen::internal::pmadd(wv, xv[k], acc[cc][k]);
        }
      }
    }
  }
  LUKTHUNG_UNROLL
  for (int cc = 0; cc < CB; ++cc) {
    LUKTHUNG_UNROLL
    for (int k = 0; k < kTilePackets; ++k) {
      Eigen::internal::pstoreu(out + cc * out_plane + k * L, acc[cc][k]);
    }
  }
}

// Valid correlation over a padded input,
//   out[c, i, j] = sum_{ci, a, b} w[c, ci, a, b] * in[ci, i + a, j + b],
// for i < out_h and j < out_w, delivered tile by tile as
// sink(c, i, j0, values) where values holds columns [j0, j0 + tile width).
// out_w must be a multiple of the tile width and `in` rows must be readable
// up to out_w + k_w - 1. Nothing of output size is materialized here.
template <typename T, typename Sink>
void Correlate(const Padded<T>& in, const T* w, const CorrelateShape& s, Sink&& sink) {
  const std::size_t tile = kTileWidth<T>;
  const std::size_t taps = s.k_h * s.k_w;
  const std::size_t k_per_out = s.c_in * taps;
  std::vector<std::size_t> offsets(taps);
  for (std::size_t a = 0; a < s.k_h; ++a) {
    for (std::size_t b = 0; b < s.k_w; ++b) offsets[a * s.k_w + b] = a * in.stride + b;
  }
  std::vector<T> scratch(kTileChannels * tile);
  const T* x = in.data.data();
  const std::size_t x_plane = in.plane();
  for (std::size_t c0 = 0; c0 < s.c_out; c0 += kTileChannels) {
    const std::size_t cb = std::min<std::size_t>(kTileChannels, s.c_out - c0);
    for (std::size_t i = 0; i < s.out_h; ++i) {
      for (std::size_t j0 = 0; j0 < s.out_w; j0 += tile) {
        const T* xt = x + i * in.stride + j0;
        if (cb == kTileChannels) {
          CorrelateTile<T, kTileChannels>(xt, x_plane, offsets.data(), taps,
                                          w + c0 * k_per_out, s.c_in, scratch.data(),
                                          tile);
        } else {
          for (std::size_t c = 0; c < cb; ++c) {
            CorrelateTile<T, 1>(xt, x_plane, offsets.data(), taps, w + (c0 + c) * k_per_out,
                                s.c_in, scratch.data() + c * tile, tile);
          }
        }
        for (std::size_t c = 0; c < cb; ++c) sink(c0 + c, i, j0, scratch.data() + c * tile);
      }
    }
  }
}

struct ConvGeometry {
  std::size_t c_in, height, width;
  std::size_t c_out, k_h, k_w;
  std::size_t out_h;
  std::size_t pad;  // left time padding, kW / 2
};

template <typename T>
ConvGeometry CheckConv(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                       const BasicTensor<T>& bias) {
  if (input.rank() != 3) {
    throw ShapeError("conv2d input must be [C_in, H, W], got " +
                     ShapeToString(input.shape()));
  }
  if (weights.rank() != 4) {
    throw ShapeError("conv2d weights must be [C_out, C_in, kH, kW], got " +
                     ShapeToString(weights.shape()));
  }
  ConvGeometry g{};
  g.c_in = input.dim(0);
  g.height = input.dim(1);
  g.width = input.dim(2);
  g.c_out = weights.dim(0);
  g.k_h = weights.dim(2);
  g.k_w = weights.dim(3);
  if (weights.dim(1) != g.c_in) {
    throw ShapeError("conv2d channel mismatch: weights expect C_in=" +
                     std::to_string(weights.dim(1)) + " but input has C_in=" +
                     std::to_string(g.c_in));
  }
  if (g.k_h > g.height) {
    throw ShapeError("conv2d kernel height " + std::to_string(g.k_h) +
                     " exceeds input height " + std::to_string(g.height));
  }
  if (bias.shape() != Shape{g.c_out}) {
    throw ShapeError("conv2d bias: expected shape [" + std::to_string(g.c_out) +
                     "], got " + ShapeToString(bias.shape()));
  }
  g.out_h = g.height - g.k_h + 1;
  g.pad = g.k_w / 2;
  return g;
}

// Runs the forward correlation for conv2d geometry; see Correlate for the
// sink contract. Columns at or beyond g.width in a tile are padding.
template <typename T, typename Sink>
void ConvTiles(const ConvGeometry& g, const BasicTensor<T>& input,
               const BasicTensor<T>& weights, Sink&& sink) {
  const std::size_t out_w = RoundUp(g.width, kTileWidth<T>);
  const Padded<T> in = PadInput(input.data(), g.c_in, g.height, g.width, 0, 0, g.pad,
                                out_w + g.k_w - 1, 0);
  Correlate(in, weights.data(), CorrelateShape{g.c_in, g.c_out, g.k_h, g.k_w, g.out_h, out_w},
            std::forward<Sink>(sink));
}

}  // namespace

template <typename T>
BasicTensor<T> Conv2d(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                      const BasicTensor<T>& bias) {
  const ConvGeometry g = CheckConv(input, weights, bias);
  BasicTensor<T> output({g.c_out, g.out_h, g.width});
  ConvTiles(g, input, weights, [&](std::size_t c, std::size_t i, std::size_t j0, const T* v) {
    const std::size_t n = std::min(kTileWidth<T>, g.width - std::min(g.width, j0));
    T* dst = output.data() + (c * g.out_h + i) * g.width + j0;
    for (std::size_t j = 0; j < n; ++j) dst[j] = v[j] + bias[c];
  });
  return output;
}

template <typename T>
void Conv2dBackward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                    const BasicTensor<T>& grad_output, BasicTensor<T>* grad_input,
                    BasicTensor<T>& grad_weights, BasicTensor<T>& grad_bias) {
  const ConvGeometry g = CheckConv(input, weights, grad_bias);
  ExpectShape(grad_output, {g.c_out, g.out_h, g.width}, "conv2d grad_output");
  ExpectShape(grad_weights, weights.shape(), "conv2d grad_weights");
  const std::size_t plane = g.out_h * g.width;
  for (std::size_t c = 0; c < g.c_out; ++c) {
    const T* src = grad_output.data() + c * plane;
    T acc{0};
    for (std::size_t i = 0; i < plane; ++i) acc += src[i];
    grad_bias[c] += acc;
  }

  // dW[c, ci, a, b] = sum_{i, j} G[c, i, j] * xpad[ci, i + a, j + b]. With G
  // laid out at the padded row stride (zeros past W), each (a, b) slice is one
  // GEMM of G against a shifted, strided view of the padded input.
  {
    const std::size_t stride = g.width + g.k_w - 1;
    const Padded<T> x = PadInput(input.data(), g.c_in, g.height, g.width, 0, 0, g.pad,
                                 stride, g.k_w);
    const Padded<T> gp =
        PadInput(grad_output.data(), g.c_out, g.out_h, g.width, 0, 0, 0, stride, 0);
    const auto n = static_cast<Eigen::Index>(g.out_h * stride);
    const ConstMatrixMap<T> gmat(gp.data.data(), g.c_out, n, Eigen::OuterStride<>(n));
    const std::size_t k_per_out = g.c_in * g.k_h * g.k_w;
    for (std::size_t a = 0; a < g.k_h; ++a) {
      for (std::size_t b = 0; b < g.k_w; ++b) {
        const ConstMatrixMap<T> xmat(x.data.data() + a * stride + b, g.c_in, n,
                                     Eigen::OuterStride<>(x.plane()));
        Eigen::Map<RowMatrix<T>, 0, Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>> dw(
            grad_weights.data() + a * g.k_w + b, g.c_out, g.c_in,
            Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>(k_per_out, g.k_h * g.k_w));
        dw.noalias() += gmat * xmat.transpose();
      }
    }
  }

  // dX is a full correlation of G with the flipped, channel-transposed
  // kernel: dX[ci, h, t] = sum w[c, ci, kH-1-a', kW-1-b'] Gpad[c, h+a', t+b'].
  if (grad_input != nullptr) {
    std::vector<T> flipped(weights.size());
    for (std::size_t c = 0; c < g.c_out; ++c) {
      for (std::size_t ci = 0; ci < g.c_in; ++ci) {
        for (std::size_t a = 0; a < g.k_h; ++a) {
          for (std::size_t b = 0; b < g.k_w; ++b) {
            flipped[((ci * g.c_out + c) * g.k_h + (g.k_h - 1 - a)) * g.k_w +
                    (g.k_w - 1 - b)] =
                weights[((c * g.c_in + ci) * g.k_h + a) * g.k_w + b];
          }
        }
      }
    }
    const std::size_t out_w = RoundUp(g.width, kTileWidth<T>);
    const Padded<T> gpad =
        PadInput(grad_output.data(), g.c_out, g.out_h, g.width, g.k_h - 1, g.k_h - 1,
                 g.k_w - 1 - g.pad, out_w + g.k_w - 1, 0);
    *grad_input = BasicTensor<T>({g.c_in, g.height, g.width});
    Correlate(gpad, flipped.data(),
              CorrelateShape{g.c_out, g.c_in, g.k_h, g.k_w, g.height, out_w},
              [&](std::size_t ci, std::size_t h, std::size_t j0, const T* v) {
                const std::size_t n = std::min(kTileWidth<T>, g.width - std::min(g.width, j0));
                std::copy_n(v, n, grad_input->data() + (ci * g.height + h) * g.width + j0);
              });
  }
}

template <typename T>
PoolResult<T> MaxPoolFreq(const BasicTensor<T>& input) {
  if (input.rank() != 3) {
    throw ShapeError("maxpool_freq input must be [C, H, W], got " +
                     ShapeToString(input.shape()));
  }
  const std::size_t c_dim = input.dim(0), h = input.dim(1), w = input.dim(2);
  PoolResult<T> r{BasicTensor<T>({c_dim, 1, w}),
                  std::vector<std::uint32_t>(c_dim * w, 0)};
  for (std::size_t c = 0; c < c_dim; ++c) {
    T* best = r.output.data() + c * w;
    std::uint32_t* arg = r.argmax.data() + c * w;
    std::copy_n(input.data() + c * h * w, w, best);
    for (std::size_t i = 1; i < h; ++i) {
      const T* row = input.data() + (c * h + i) * w;
      for (std::size_t j = 0; j < w; ++j) {
        if (row[j] > best[j]) {
          best[j] = row[j];
          arg[j] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }
  return r;
}

template <typename T>
BasicTensor<T> MaxPoolFreqBackward(const BasicTensor<T>& grad_output,
                                   const std::vector<std::uint32_t>& argmax,
                                   std::size_t height) {
  if (grad_output.rank() != 3 || grad_output.dim(1) != 1 ||
      argmax.size() != grad_output.dim(0) * grad_output.dim(2)) {
    throw ShapeError("maxpool_freq backward: grad_output " +
                     ShapeToString(grad_output.shape()) +
                     " does not match argmax of size " +
                     std::to_string(argmax.size()));
  }
  const std::size_t c_dim = grad_output.dim(0), w = grad_output.dim(2);
  BasicTensor<T> grad({c_dim, height, w});
  for (std::size_t c = 0; c < c_dim; ++c) {
    for (std::size_t j = 0; j < w; ++j) {
      grad.at(c, argmax[c * w + j], j) = grad_output[c * w + j];
    }
  }
  return grad;
}

template <typename T>
PoolResult<T> ConvReluMaxPoolFreq(const BasicTensor<T>& input,
                                  const BasicTensor<T>& weights,
                                  const BasicTensor<T>& bias) {
  const ConvGeometry g = CheckConv(input, weights, bias);
  PoolResult<T> r{BasicTensor<T>({g.c_out, 1, g.width}),
                  std::vector<std::uint32_t>(g.c_out * g.width, 0)};
  // Rows arrive in increasing frequency order per channel, so a strict
  // comparison keeps the lowest index on ties.
  ConvTiles(g, input, weights, [&](std::size_t c, std::size_t i, std::size_t j0, const T* v) {
    const std::size_t n = std::min(kTileWidth<T>, g.width - std::min(g.width, j0));
    T* best = r.output.data() + c * g.width + j0;
    std::uint32_t* arg = r.argmax.data() + c * g.width + j0;
    if (i == 0) {
      std::copy_n(v, n, best);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] > best[j]) {
        best[j] = v[j];
        arg[j] = static_cast<std::uint32_t>(i);
      }
    }
  });
  // relu(max(x) + b) == max(relu(x + b)); the argmax is unaffected.
  for (std::size_t c = 0; c < g.c_out; ++c) {
    T* best = r.output.data() + c * g.width;
    for (std::size_t j = 0; j < g.width; ++j) best[j] = std::max(best[j] + bias[c], T{0});
  }
  return r;
}

template <typename T>
void ConvReluMaxPoolFreqBackward(const BasicTensor<T>& input,
                                 const BasicTensor<T>& weights,
                                 const PoolResult<T>& forward,
                                 const BasicTensor<T>& grad_output,
                                 BasicTensor<T>* grad_input,
                                 BasicTensor<T>& grad_weights,
                                 BasicTensor<T>& grad_bias) {
  const ConvGeometry g = CheckConv(input, weights, grad_bias);
  ExpectShape(grad_output, {g.c_out, 1, g.width}, "conv-pool grad_output");
  ExpectShape(grad_weights, weights.shape(), "conv-pool grad_weights");

  // Each active output column touches a k_h x k_w patch of the input at its
  // argmax row. The patch is walked along its longer axis: tall (timbral)
  // kernels use a time-major copy of the input so the frequency taps are
  // contiguous, wide (temporal) kernels the natural frequency-major layout.
  // Both copies are zero padded in time by `pad` on the left. Gradients are
  // accumulated in the same tap order and mapped back at the end.
  const bool time_major = g.k_h > g.k_w;
  const std::size_t tp = g.width + g.k_w - 1;
  const std::size_t inner = time_major ? g.k_h : g.k_w;  // contiguous tap axis
  const std::size_t outer = time_major ? g.k_w : g.k_h;
  const std::size_t outer_step = time_major ? g.height : tp;  // input step per outer tap
  const auto x_index = [&](std::size_t ci, std::size_t h, std::size_t t) {
    return time_major ? (ci * tp + t) * g.height + h : (ci * g.height + h) * tp + t;
  };
  const auto tap_index = [&](std::size_t c, std::size_t ci, std::size_t a, std::size_t b) {
    return time_major ? ((c * g.c_in + ci) * g.k_w + b) * g.k_h + a
                      : ((c * g.c_in + ci) * g.k_h + a) * g.k_w + b;
  };
  const auto w_index = [&](std::size_t c, std::size_t ci, std::size_t a, std::size_t b) {
    return ((c * g.c_in + ci) * g.k_h + a) * g.k_w + b;
  };

  std::vector<T> x(g.c_in * g.height * tp, T{0});
  for (std::size_t ci = 0; ci < g.c_in; ++ci)
    for (std::size_t h = 0; h < g.height; ++h)
      for (std::size_t t = 0; t < g.width; ++t)
        x[x_index(ci, h, t + g.pad)] = input[(ci * g.height + h) * g.width + t];
  const std::size_t taps = g.c_in * g.k_h * g.k_w;
  std::vector<T> wt(grad_input != nullptr ? g.c_out * taps : 0);
  std::vector<T> dwt(g.c_out * taps, T{0});
  std::vector<T> dx(grad_input != nullptr ? x.size() : 0, T{0});
  if (grad_input != nullptr) {
    for (std::size_t c = 0; c < g.c_out; ++c)
      for (std::size_t ci = 0; ci < g.c_in; ++ci)
        for (std::size_t a = 0; a < g.k_h; ++a)
          for (std::size_t b = 0; b < g.k_w; ++b)
            wt[tap_index(c, ci, a, b)] = weights[w_index(c, ci, a, b)];
  }

  for (std::size_t c = 0; c < g.c_out; ++c) {
    for (std::size_t j = 0; j < g.width; ++j) {
      const std::size_t idx = c * g.width + j;
      // ReLU gate: a pooled value of exactly zero passes no gradient.
      if (!(forward.output[idx] > T{0})) continue;
      const T gv = grad_output[idx];
      if (gv == T{0}) continue;
      grad_bias[c] += gv;
      const std::size_t row = forward.argmax[idx];
      for (std::size_t ci = 0; ci < g.c_in; ++ci) {
        // Output column j reads padded time j + b.
        const std::size_t base = x_index(ci, row, j);
        const std::size_t tbase = tap_index(c, ci, 0, 0);
        for (std::size_t o = 0; o < outer; ++o) {
          const std::size_t off = base + o * outer_step;
          T* dw = dwt.data() + tbase + o * inner;
          const T* xs = x.data() + off;
          for (std::size_t k = 0; k < inner; ++k) dw[k] += gv * xs[k];
          if (grad_input != nullptr) {
            T* dxs = dx.data() + off;
            const T* ws = wt.data() + tbase + o * inner;
            for (std::size_t k = 0; k < inner; ++k) dxs[k] += gv * ws[k];
          }
        }
      }
    }
  }

  for (std::size_t c = 0; c < g.c_out; ++c)
    for (std::size_t ci = 0; ci < g.c_in; ++ci)
      for (std::size_t a = 0; a < g.k_h; ++a)
        for (std::size_t b = 0; b < g.k_w; ++b)
          grad_weights[w_index(c, ci, a, b)] += dwt[tap_index(c, ci, a, b)];
  if (grad_input != nullptr) {
    *grad_input = BasicTensor<T>({g.c_in, g.height, g.width});
    for (std::size_t ci = 0; ci < g.c_in; ++ci)
      for (std::size_t h = 0; h < g.height; ++h)
        for (std::size_t t = 0; t < g.width; ++t)
          (*grad_input)[(ci * g.height + h) * g.width + t] = dx[x_index(ci, h, t + g.pad)];
  }
}

template <typename T>
BasicTensor<T> Dense(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                     const BasicTensor<T>& bias) {
  if (weights.rank() != 2 || input.rank() != 1 ||
      weights.dim(1) != input.dim(0) || bias.shape() != Shape{weights.dim(0)}) {
    throw ShapeError("dense: weights " + ShapeToString(weights.shape()) +
                     ", input " + ShapeToString(input.shape()) + ", bias " +
                     ShapeToString(bias.shape()) + " do not agree");
  }
  const std::size_t m = weights.dim(0), n = weights.dim(1);
  BasicTensor<T> out({m});
  const ConstMatrixMap<T> wmat(weights.data(), m, n, Eigen::OuterStride<>(n));
  VectorMap<T>(out.data(), m).noalias() =
      wmat * ConstVectorMap<T>(input.data(), n) + ConstVectorMap<T>(bias.data(), m);
  return out;
}

template <typename T>
void DenseBackward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                   const BasicTensor<T>& grad_output, BasicTensor<T>* grad_input,
                   BasicTensor<T>& grad_weights, BasicTensor<T>& grad_bias) {
  const std::size_t m = weights.dim(0), n = weights.dim(1);
  ExpectShape(grad_output, {m}, "dense grad_output");
  ExpectShape(input, {n}, "dense input");
  ExpectShape(grad_weights, weights.shape(), "dense grad_weights");
  const ConstVectorMap<T> gvec(grad_output.data(), m);
  MatrixMap<T>(grad_weights.data(), m, n, Eigen::OuterStride<>(n)).noalias() +=
      gvec * ConstVectorMap<T>(input.data(), n).transpose();
  VectorMap<T>(grad_bias.data(), m) += gvec;
  if (grad_input != nullptr) {
    *grad_input = BasicTensor<T>({n});
    const ConstMatrixMap<T> wmat(weights.data(), m, n, Eigen::OuterStride<>(n));
    VectorMap<T>(grad_input->data(), n).noalias() = wmat.transpose() * gvec;
  }
}

template <typename T>
T SigmoidScalar(T x) {
  // Keep the result strictly inside (0, 1) even where it would round to an
  // endpoint in this precision.
  constexpr T kLo = std::numeric_limits<T>::min();
  constexpr T kHi = T{1} - std::numeric_limits<T>::epsilon() / 2;
  T s;
  if (x >= 0) {
    s = T{1} / (T{1} + std::exp(-x));
  } else {
    const T e = std::exp(x);
    s = e / (T{1} + e);
  }
  return std::clamp(s, kLo, kHi);
}

template <typename T>
BasicTensor<T> Activate(const BasicTensor<T>& input, Activation kind) {
  BasicTensor<T> out = input;
  for (T& v : out.values()) {
    v = kind == Activation::kRelu ? std::max(v, T{0}) : SigmoidScalar(v);
  }
  return out;
}

template <typename T>
BasicTensor<T> ActivateBackward(const BasicTensor<T>& saved,
                                const BasicTensor<T>& grad_output,
                                Activation kind) {
  ExpectShape(grad_output, saved.shape(), "activation grad_output");
  BasicTensor<T> grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (kind == Activation::kRelu) {
      if (!(saved[i] > T{0})) grad[i] = T{0};
    } else {
      grad[i] *= saved[i] * (T{1} - saved[i]);
    }
  }
  return grad;
}

namespace {
void CheckTarget(int target, double pos_weight) {
  if (target != 0 && target != 1) {
    throw ValidationError("bce target must be 0 or 1, got " +
                          std::to_string(target));
  }
  if (!(pos_weight > 0.0)) {
    throw ValidationError("bce pos_weight must be positive");
  }
}
}  // namespace

double BceLoss(double pred, int target, double pos_weight) {
  CheckTarget(target, pos_weight);
  const double p = std::clamp(pred, kBceEpsilon, 1.0 - kBceEpsilon);
  return target == 1 ? -pos_weight * std::log(p) : -std::log1p(-p);
}

double BceLogitGrad(double logit, int target, double pos_weight) {
  CheckTarget(target, pos_weight);
  const double p = SigmoidScalar(logit);
  return target == 1 ? -pos_weight * (1.0 - p) : p;
}

#define LUKTHUNG_INSTANTIATE_OPS(T)                                            \
  template BasicTensor<T> Conv2d(const BasicTensor<T>&, const BasicTensor<T>&, \
                                 const BasicTensor<T>&);                       \
  template void Conv2dBackward(const BasicTensor<T>&, const BasicTensor<T>&,   \
                               const BasicTensor<T>&, BasicTensor<T>*,         \
                               BasicTensor<T>&, BasicTensor<T>&);              \
  template PoolResult<T> MaxPoolFreq(const BasicTensor<T>&);                   \
  template BasicTensor<T> MaxPoolFreqBackward(                                 \
      const BasicTensor<T>&, const std::vector<std::uint32_t>&, std::size_t);  \
  template PoolResult<T> ConvReluMaxPoolFreq(                                  \
      const BasicTensor<T>&, const BasicTensor<T>&, const BasicTensor<T>&);    \
  template void ConvReluMaxPoolFreqBackward(                                   \
      const BasicTensor<T>&, const BasicTensor<T>&, const PoolResult<T>&,      \
      const BasicTensor<T>&, BasicTensor<T>*, BasicTensor<T>&,                 \
      BasicTensor<T>&);                                                        \
  template BasicTensor<T> Dense(const BasicTensor<T>&, const BasicTensor<T>&,  \
                                const BasicTensor<T>&);                        \
  template void DenseBackward(const BasicTensor<T>&, const BasicTensor<T>&,    \
                              const BasicTensor<T>&, BasicTensor<T>*,          \
                              BasicTensor<T>&, BasicTensor<T>&);               \
  template T SigmoidScalar(T);                                                 \
  template BasicTensor<T> Activate(const BasicTensor<T>&, Activation);         \
  template BasicTensor<T> ActivateBackward(                                    \
      const BasicTensor<T>&, const BasicTensor<T>&, Activation);

LUKTHUNG_INSTANTIATE_OPS(float)
LUKTHUNG_INSTANTIATE_OPS(double)

#undef LUKTHUNG_INSTANTIATE_OPS

}  // namespace lukthung::nn
