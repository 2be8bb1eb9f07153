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

#include "origami/model.hpp"

namespace origami {

// Activations carry a leading batch dimension of 1: {1, layer shape...}.
Shape batched(const Shape& layer_shape);

// Linear operator of a conv/dense layer without bias. Result scale is
// scale_in * scale_w. This is the only part ever offloaded on blinded data.
QuantizedTensor linear_part(const LayerSpec& layer, const LayerWeights& w,
                            const QuantizedTensor& x);

// Bias, rescale back to the activation scale, optional fused ReLU.
QuantizedTensor finish_linear(const LayerSpec& layer,
                              std::span<const std::uint32_t> bias,
                              std::int64_t weight_scale,
                              const QuantizedTensor& acc);
inline QuantizedTensor finish_linear(const LayerSpec& layer,
                                     const LayerWeights& w,
                                     const QuantizedTensor& acc) {
  return finish_linear(layer, w.bias, w.kernel.scale(), acc);
}

// Max-pool layer.
QuantizedTensor pool_layer(const LayerSpec& layer, const QuantizedTensor& x);

// Dequantize logits and apply softmax.
FloatTensor softmax_layer(const QuantizedTensor& logits);

// Runs conv/dense/maxpool layers [first, last] in the clear. `last` must not
// be the softmax layer.
QuantizedTensor forward_range(const Model& model, const QuantizedTensor& x,
                              int first, int last);

// Runs layers [first, L] and returns the dequantized output of layer L.
FloatTensor forward_to_output(const Model& model, const QuantizedTensor& x,
                              int first);

}  // namespace origami
