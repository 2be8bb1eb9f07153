// Copyright 2026 The Origami Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "origami/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "origami/error.hpp"

namespace origami {
namespace {

std::vector<std::int32_t> centered(const QuantizedTensor& t) {
  std::vector<std::int32_t> out(t.size());
  const auto p = t.modulus();
  const auto v = t.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<std::int32_t>(to_signed(v[i], p));
  }
  return out;
}

void check_field(const QuantizedTensor& input, const CenteredWeights& w,
                 const char* op) {
  if (input.modulus() != w.modulus) {
    fail(ErrorCode::kShapeMismatch,
         std::string(op) + ": input and weights use different moduli");
  }
}

// Accumulates with periodic reduction once the unreduced term budget is hit.
struct Accumulator {
  std::vector<std::int64_t> acc;
  std::size_t terms = 0;
  std::int64_t p;

  Accumulator(std::size_t n, std::uint32_t modulus) : acc(n, 0), p(modulus) {}

  void reset() {
    std::fill(acc.begin(), acc.end(), 0);
    terms = 0;
  }

  void axpy(std::int32_t x, const std::int32_t* w) {
    if (++terms >= kMaxUnreducedFanIn) {
      for (auto& a : acc) a %= p;
      terms = 1;
    }
    const std::int64_t xv = x;
    const std::size_t n = acc.size();
    std::int64_t* a = acc.data();
    for (std::size_t o = 0; o < n; ++o) {
      a[o] += xv * static_cast<std::int64_t>(w[o]);
    }
  }
};

}  // namespace

CenteredWeights CenteredWeights::from(const QuantizedTensor& w) {
  return CenteredWeights{w.shape(), centered(w), w.scale(), w.modulus()};
}

QuantizedTensor conv2d(const QuantizedTensor& input,
                       const QuantizedTensor& weights, std::size_t stride,
                       std::size_t padding) {
  return conv2d(input, CenteredWeights::from(weights), stride, padding);
}

QuantizedTensor conv2d(const QuantizedTensor& input,
                       const CenteredWeights& weights, std::size_t stride,
                       std::size_t padding) {
  check_field(input, weights, "conv2d");
  const auto& is = input.shape();
  const auto& ws = weights.shape;
  if (is.size() != 4 || ws.size() != 4) {
    fail(ErrorCode::kShapeMismatch,
         "conv2d: expected NHWC input and KHxKWxCinxCout kernel, got " +
             shape_string(is) + " and " + shape_string(ws));
  }
  if (is[3] != ws[2]) {
    fail(ErrorCode::kShapeMismatch,
         "conv2d: input channels " + std::to_string(is[3]) +
             " != kernel channels " + std::to_string(ws[2]));
  }
  if (stride == 0) fail(ErrorCode::kInvalidArgument, "conv2d: stride is 0");
  const std::size_t n = is[0], h = is[1], w = is[2], c = is[3];
  const std::size_t kh = ws[0], kw = ws[1], co = ws[3];
  if (h + 2 * padding < kh || w + 2 * padding < kw) {
    fail(ErrorCode::kShapeMismatch, "conv2d: kernel larger than padded input");
  }
  const std::size_t oh = (h + 2 * padding - kh) / stride + 1;
  const std::size_t ow = (w + 2 * padding - kw) / stride + 1;

  const auto x = centered(input);
  const std::uint32_t p = input.modulus();
  std::vector<std::uint32_t> out(n * oh * ow * co);
  Accumulator acc(co, p);

  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t xo = 0; xo < ow; ++xo) {
        acc.reset();
        for (std::size_t ky = 0; ky < kh; ++ky) {
          const auto iy = static_cast<std::ptrdiff_t>(y * stride + ky) -
                          static_cast<std::ptrdiff_t>(padding);
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(h)) continue;
          for (std::size_t kx = 0; kx < kw; ++kx) {
            const auto ix = static_cast<std::ptrdiff_t>(xo * stride + kx) -
                            static_cast<std::ptrdiff_t>(padding);
            if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(w)) continue;
            const std::int32_t* xin =
                x.data() + ((b * h + static_cast<std::size_t>(iy)) * w +
                            static_cast<std::size_t>(ix)) * c;
            const std::int32_t* wk =
                weights.values.data() + (ky * kw + kx) * c * co;
            for (std::size_t ci = 0; ci < c; ++ci) {
              acc.axpy(xin[ci], wk + ci * co);
            }
          }
        }
        std::uint32_t* dst = out.data() + ((b * oh + y) * ow + xo) * co;
        for (std::size_t o = 0; o < co; ++o) dst[o] = to_field(acc.acc[o], p);
      }
    }
  }
  return QuantizedTensor({n, oh, ow, co}, std::move(out),
                         input.scale() * weights.scale, p);
}

QuantizedTensor dense(const QuantizedTensor& input,
                      const QuantizedTensor& weights) {
  return dense(input, CenteredWeights::from(weights));
}

QuantizedTensor dense(const QuantizedTensor& input,
                      const CenteredWeights& weights) {
  check_field(input, weights, "dense");
  const auto& is = input.shape();
  const auto& ws = weights.shape;
  if (ws.size() != 2 || is.empty()) {
    fail(ErrorCode::kShapeMismatch,
         "dense: expected [F, O] weights, got " + shape_string(ws));
  }
  const std::size_t batch = is.size() > 1 ? is[0] : 1;
  const std::size_t features = input.size() / std::max<std::size_t>(batch, 1);
  if (features != ws[0] || batch * features != input.size()) {
    fail(ErrorCode::kShapeMismatch,
         "dense: input " + shape_string(is) + " does not match weights " +
             shape_string(ws));
  }
  const std::size_t outs = ws[1];
  const auto x = centered(input);
  const std::uint32_t p = input.modulus();
  std::vector<std::uint32_t> out(batch * outs);
  Accumulator acc(outs, p);
  for (std::size_t b = 0; b < batch; ++b) {
    acc.reset();
    const std::int32_t* row = x.data() + b * features;
    for (std::size_t f = 0; f < features; ++f) {
      acc.axpy(row[f], weights.values.data() + f * outs);
    }
    for (std::size_t o = 0; o < outs; ++o) {
      out[b * outs + o] = to_field(acc.acc[o], p);
    }
  }
  Shape shape = is.size() > 1 ? Shape{batch, outs} : Shape{outs};
  return QuantizedTensor(std::move(shape), std::move(out),
                         input.scale() * weights.scale, p);
}

QuantizedTensor relu(const QuantizedTensor& input) {
  const auto p = input.modulus();
  const auto v = input.values();
  std::vector<std::uint32_t> out(v.begin(), v.end());
  for (auto& e : out) {
    if (e > p / 2) e = 0;
  }
  return QuantizedTensor(input.shape(), std::move(out), input.scale(), p);
}

QuantizedTensor maxpool2d(const QuantizedTensor& input, std::size_t window,
                          std::size_t stride) {
  const auto& is = input.shape();
  if (is.size() != 4) {
    fail(ErrorCode::kShapeMismatch,
         "maxpool2d: expected NHWC input, got " + shape_string(is));
  }
  if (window == 0 || stride == 0) {
    fail(ErrorCode::kInvalidArgument, "maxpool2d: window and stride must be > 0");
  }
  const std::size_t n = is[0], h = is[1], w = is[2], c = is[3];
  if (h < window || w < window) {
    fail(ErrorCode::kShapeMismatch, "maxpool2d: window larger than input");
  }
  const std::size_t oh = (h - window) / stride + 1;
  const std::size_t ow = (w - window) / stride + 1;
  const auto p = input.modulus();
  const auto v = input.values();
  std::vector<std::uint32_t> out(n * oh * ow * c);
  std::vector<std::int64_t> best(c);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        std::fill(best.begin(), best.end(),
                  std::numeric_limits<std::int64_t>::min());
        for (std::size_t ky = 0; ky < window; ++ky) {
          for (std::size_t kx = 0; kx < window; ++kx) {
            const std::size_t base =
                ((b * h + y * stride + ky) * w + x * stride + kx) * c;
            for (std::size_t ch = 0; ch < c; ++ch) {
              best[ch] = std::max(best[ch], to_signed(v[base + ch], p));
            }
          }
        }
        std::uint32_t* dst = out.data() + ((b * oh + y) * ow + x) * c;
        for (std::size_t ch = 0; ch < c; ++ch) dst[ch] = to_field(best[ch], p);
      }
    }
  }
  return QuantizedTensor({n, oh, ow, c}, std::move(out), input.scale(), p);
}

FloatTensor softmax(const FloatTensor& logits) {
  const auto& s = logits.shape();
  if (s.empty()) return logits;
  const std::size_t k = s.back();
  const auto v = logits.values();
  std::vector<double> out(v.size());
  for (std::size_t row = 0; row * k < v.size(); ++row) {
    const double* in = v.data() + row * k;
    double* o = out.data() + row * k;
    const double m = *std::max_element(in, in + k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      o[i] = std::exp(in[i] - m);
      sum += o[i];
    }
    for (std::size_t i = 0; i < k; ++i) o[i] /= sum;
  }
  return FloatTensor(s, std::move(out));
}

QuantizedTensor add_bias(const QuantizedTensor& input,
                         std::span<const std::uint32_t> bias) {
  const auto& s = input.shape();
  if (s.empty() || s.back() != bias.size()) {
    fail(ErrorCode::kShapeMismatch,
         "add_bias: bias length " + std::to_string(bias.size()) +
             " does not match last dimension of " + shape_string(s));
  }
  const auto p = input.modulus();
  const auto v = input.values();
  std::vector<std::uint32_t> out(v.size());
  const std::size_t k = bias.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = add_mod(v[i], bias[i % k], p);
  }
  return QuantizedTensor(s, std::move(out), input.scale(), p);
}

QuantizedTensor rescale(const QuantizedTensor& input, std::int64_t divisor) {
  if (divisor <= 0 || input.scale() % divisor != 0) {
    fail(ErrorCode::kInvalidArgument,
         "rescale: divisor " + std::to_string(divisor) +
             " must divide scale " + std::to_string(input.scale()));
  }
  const auto p = input.modulus();
  std::vector<std::uint32_t> out(input.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = to_field(div_round_half_even(input.signed_value(i), divisor), p);
  }
  return QuantizedTensor(input.shape(), std::move(out),
                         input.scale() / divisor, p);
}

}  // namespace origami
