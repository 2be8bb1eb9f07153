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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "origami/tensor.hpp"

namespace origami {

struct SsimParams {
  double dynamic_range = 1.0;
  std::size_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
};

// Mean SSIM over all fully contained Gaussian windows; multi-channel images
// average the per-channel values. Images are [H, W] or [H, W, C].
double ssim(const FloatTensor& a, const FloatTensor& b, const SsimParams& params = {});

struct SsimReport {
  int layer_index = 0;
  std::vector<double> values;
  double mean = 0;
};

SsimReport mean_ssim(std::span<const FloatTensor> reals,
                     std::span<const FloatTensor> fakes, int layer_index = 0,
                     const SsimParams& params = {});

}  // namespace origami
