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

#include "oracles.hpp"

#include <limits>

namespace origami::oracle {

std::int64_t mod_p(std::int64_t v, std::uint32_t p) {
  const std::int64_t m = p;
  return ((v % m) + m) % m;
}

namespace {

std::int64_t sv(const QuantizedTensor& t, std::size_t i) {
  const std::int64_t v = t[i];
  return v > static_cast<std::int64_t>(t.modulus() / 2) ? v - t.modulus() : v;
}

}  // namespace

QuantizedTensor conv2d(const QuantizedTensor& x, const QuantizedTensor& w,
                       std::size_t stride, std::size_t padding) {
  const auto& xs = x.shape();
  const auto& ws = w.shape();
  const std::size_t N = xs[0], H = xs[1], W = xs[2], C = xs[3];
  const std::size_t KH = ws[0], KW = ws[1], O = ws[3];
  const std::size_t OH = (H + 2 * padding - KH) / stride + 1;
  const std::size_t OW = (W + 2 * padding - KW) / stride + 1;
  const auto p = x.modulus();
  std::vector<std::uint32_t> out(N * OH * OW * O);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t oy = 0; oy < OH; ++oy)
      for (std::size_t ox = 0; ox < OW; ++ox)
        for (std::size_t o = 0; o < O; ++o) {
          __int128 acc = 0;
          for (std::size_t ky = 0; ky < KH; ++ky)
            for (std::size_t kx = 0; kx < KW; ++kx)
              for (std::size_t c = 0; c < C; ++c) {
                const long iy = static_cast<long>(oy * stride + ky) - static_cast<long>(padding);
                const long ix = static_cast<long>(ox * stride + kx) - static_cast<long>(padding);
                if (iy < 0 || ix < 0 || iy >= static_cast<long>(H) || ix >= static_cast<long>(W)) continue;
                const std::size_t xi = ((n * H + iy) * W + ix) * C + c;
                const std::size_t wi = ((ky * KW + kx) * C + c) * O + o;
                acc += static_cast<__int128>(sv(x, xi)) * sv(w, wi);
              }
          const auto r = static_cast<std::int64_t>(acc % p);
          out[((n * OH + oy) * OW + ox) * O + o] = static_cast<std::uint32_t>(mod_p(r, p));
        }
  return QuantizedTensor({N, OH, OW, O}, std::move(out), x.scale() * w.scale(), p);
}

QuantizedTensor dense(const QuantizedTensor& x, const QuantizedTensor& w) {
  const std::size_t N = x.shape()[0];
  const std::size_t F = w.shape()[0], O = w.shape()[1];
  const auto p = x.modulus();
  std::vector<std::uint32_t> out(N * O);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t o = 0; o < O; ++o) {
      __int128 acc = 0;
      for (std::size_t f = 0; f < F; ++f) acc += static_cast<__int128>(sv(x, n * F + f)) * sv(w, f * O + o);
      out[n * O + o] = static_cast<std::uint32_t>(mod_p(static_cast<std::int64_t>(acc % p), p));
    }
  return QuantizedTensor({N, O}, std::move(out), x.scale() * w.scale(), p);
}

QuantizedTensor relu(const QuantizedTensor& x) {
  std::vector<std::uint32_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sv(x, i) > 0 ? x[i] : 0;
  return QuantizedTensor(x.shape(), std::move(out), x.scale(), x.modulus());
}

QuantizedTensor maxpool(const QuantizedTensor& x, std::size_t window, std::size_t stride) {
  const auto& s = x.shape();
  const std::size_t N = s[0], H = s[1], W = s[2], C = s[3];
  const std::size_t OH = (H - window) / stride + 1, OW = (W - window) / stride + 1;
  std::vector<std::uint32_t> out(N * OH * OW * C);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t oy = 0; oy < OH; ++oy)
      for (std::size_t ox = 0; ox < OW; ++ox)
        for (std::size_t c = 0; c < C; ++c) {
          std::int64_t best = std::numeric_limits<std::int64_t>::min();
          std::size_t arg = 0;
          for (std::size_t dy = 0; dy < window; ++dy)
            for (std::size_t dx = 0; dx < window; ++dx) {
              const std::size_t i = ((n * H + oy * stride + dy) * W + ox * stride + dx) * C + c;
              if (sv(x, i) > best) {
                best = sv(x, i);
                arg = i;
              }
            }
          out[((n * OH + oy) * OW + ox) * C + c] = x[arg];
        }
  return QuantizedTensor({N, OH, OW, C}, std::move(out), x.scale(), x.modulus());
}

}  // namespace origami::oracle
