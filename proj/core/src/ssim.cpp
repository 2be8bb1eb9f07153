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

#include "origami/ssim.hpp"

#include <algorithm>
#include <cmath>

#include "origami/error.hpp"

namespace origami {
namespace {

std::vector<double> gaussian_window(std::size_t size, double sigma) {
  std::vector<double> g(size);
  const double c = (static_cast<double>(size) - 1) / 2;
  double sum = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const double d = static_cast<double>(i) - c;
    g[i] = std::exp(-d * d / (2 * sigma * sigma));
    sum += g[i];
  }
  std::vector<double> w(size * size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) w[y * size + x] = g[y] * g[x] / (sum * sum);
  }
  return w;
}

}  // namespace

double ssim(const FloatTensor& a, const FloatTensor& b, const SsimParams& params) {
  if (a.shape() != b.shape()) {
    fail(ErrorCode::kShapeMismatch,
         "ssim: shapes " + shape_string(a.shape()) + " and " + shape_string(b.shape()) + " differ");
  }
  const auto& s = a.shape();
  if (s.size() != 2 && s.size() != 3) fail(ErrorCode::kShapeMismatch, "ssim: expected [H, W] or [H, W, C]");
  const std::size_t h = s[0], w = s[1], ch = s.size() == 3 ? s[2] : 1;
  const std::size_t k = params.window;
  if (k == 0 || h < k || w < k) {
    fail(ErrorCode::kInvalidArgument, "ssim: image " + shape_string(s) + " smaller than the " +
                                          std::to_string(k) + "x" + std::to_string(k) + " window");
  }
  if (!(params.dynamic_range > 0) || !(params.sigma > 0)) {
    fail(ErrorCode::kInvalidArgument, "ssim: dynamic range and sigma must be positive");
  }
  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  const auto win = gaussian_window(k, params.sigma);
  const auto at = [&](const FloatTensor& t, std::size_t y, std::size_t x, std::size_t c) {
    return t[(y * w + x) * ch + c];
  };

  double total = 0;
  for (std::size_t c = 0; c < ch; ++c) {
    double sum = 0;
    for (std::size_t y0 = 0; y0 + k <= h; ++y0) {
      for (std::size_t x0 = 0; x0 + k <= w; ++x0) {
        double ma = 0, mb = 0;
        for (std::size_t dy = 0; dy < k; ++dy) {
          for (std::size_t dx = 0; dx < k; ++dx) {
            const double g = win[dy * k + dx];
            ma += g * at(a, y0 + dy, x0 + dx, c);
            mb += g * at(b, y0 + dy, x0 + dx, c);
          }
        }
        double va = 0, vb = 0, cov = 0;
        for (std::size_t dy = 0; dy < k; ++dy) {
          for (std::size_t dx = 0; dx < k; ++dx) {
            const double g = win[dy * k + dx];
            const double da = at(a, y0 + dy, x0 + dx, c) - ma;
            const double db = at(b, y0 + dy, x0 + dx, c) - mb;
            va += g * da * da;
            vb += g * db * db;
            cov += g * (da * db);
          }
        }
        sum += ((2 * (ma * mb) + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      }
    }
    total += sum / static_cast<double>((h - k + 1) * (w - k + 1));
  }
  return std::clamp(total / static_cast<double>(ch), -1.0, 1.0);
}

SsimReport mean_ssim(std::span<const FloatTensor> reals, std::span<const FloatTensor> fakes,
                     int layer_index, const SsimParams& params) {
  if (reals.size() != fakes.size()) {
    fail(ErrorCode::kInvalidArgument, "mean_ssim: " + std::to_string(reals.size()) +
                                          " real images vs " + std::to_string(fakes.size()) +
                                          " reconstructions");
  }
  if (reals.empty()) fail(ErrorCode::kInvalidArgument, "mean_ssim: no image pairs");
  SsimReport r;
  r.layer_index = layer_index;
  double sum = 0;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    r.values.push_back(ssim(reals[i], fakes[i], params));
    sum += r.values.back();
  }
  r.mean = sum / static_cast<double>(r.values.size());
  return r;
}

}  // namespace origami
