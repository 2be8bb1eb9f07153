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

#include <cstdint>
#include <span>
#include <vector>

#include "origami/tensor.hpp"

namespace origami {

// Weights with residues mapped to their signed representatives, cached so
// repeated layer evaluations skip the conversion.
struct CenteredWeights {
  Shape shape;
  std::vector<std::int32_t> values;
  std::int64_t scale = 1;
  std::uint32_t modulus = kDefaultModulus;

  static CenteredWeights from(const QuantizedTensor& w);
};

// NHWC input, [KH, KW, C_in, C_out] kernel. Exact over Z_p; the result
// carries scale_in * scale_w.
QuantizedTensor conv2d(const QuantizedTensor& input,
                       const QuantizedTensor& weights, std::size_t stride,
                       std::size_t padding);
QuantizedTensor conv2d(const QuantizedTensor& input,
                       const CenteredWeights& weights, std::size_t stride,
                       std::size_t padding);

// Input is flattened per batch row ([N, ...] -> [N, F]); weights are [F, O].
QuantizedTensor dense(const QuantizedTensor& input,
                      const QuantizedTensor& weights);
QuantizedTensor dense(const QuantizedTensor& input,
                      const CenteredWeights& weights);

QuantizedTensor relu(const QuantizedTensor& input);

// NHWC max pooling on the signed interpretation. Partial windows at the
// border are dropped (floor).
QuantizedTensor maxpool2d(const QuantizedTensor& input, std::size_t window,
                          std::size_t stride);

// Softmax along the last dimension.
FloatTensor softmax(const FloatTensor& logits);

// Adds a per-channel (last dimension) residue vector.
QuantizedTensor add_bias(const QuantizedTensor& input,
                         std::span<const std::uint32_t> bias);

// Signed division by `divisor` with round-half-to-even; scale is divided too.
QuantizedTensor rescale(const QuantizedTensor& input, std::int64_t divisor);

}  // namespace origami
