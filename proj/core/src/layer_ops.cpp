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

#include "origami/layer_ops.hpp"

#include "origami/error.hpp"

namespace origami {
namespace {

void expect_input(const LayerSpec& layer, const QuantizedTensor& x) {
  if (x.shape() != batched(layer.input_shape)) {
    fail(ErrorCode::kShapeMismatch,
         "layer " + std::to_string(layer.index) + " (" + layer.name + ") expects input " +
             shape_string(batched(layer.input_shape)) + ", got " + shape_string(x.shape()));
  }
}

}  // namespace

Shape batched(const Shape& layer_shape) {
  Shape s{1};
  s.insert(s.end(), layer_shape.begin(), layer_shape.end());
  return s;
}

QuantizedTensor linear_part(const LayerSpec& layer, const LayerWeights& w,
                            const QuantizedTensor& x) {
  expect_input(layer, x);
  switch (layer.kind) {
    case LayerKind::kConv:
      return conv2d(x, w.centered, layer.stride, layer.padding);
    case LayerKind::kDense:
      return dense(x.reshaped({1, x.size()}), w.centered);
    default:
      fail(ErrorCode::kInvalidArgument,
           "layer " + std::to_string(layer.index) + " is not linear");
  }
}

QuantizedTensor finish_linear(const LayerSpec& layer,
                              std::span<const std::uint32_t> bias,
                              std::int64_t weight_scale,
                              const QuantizedTensor& acc) {
  QuantizedTensor t = layer.bias ? add_bias(acc, bias) : acc;
  t = rescale(t, weight_scale);
  return layer.relu ? relu(t) : t;
}

QuantizedTensor pool_layer(const LayerSpec& layer, const QuantizedTensor& x) {
  expect_input(layer, x);
  return maxpool2d(x, layer.window, layer.stride);
}

FloatTensor softmax_layer(const QuantizedTensor& logits) {
  return softmax(dequantize(logits));
}

QuantizedTensor forward_range(const Model& model, const QuantizedTensor& x,
                              int first, int last) {
  QuantizedTensor cur = x;
  for (int i = first; i <= last; ++i) {
    const auto& l = model.graph.layer(i);
    switch (l.kind) {
      case LayerKind::kConv:
      case LayerKind::kDense: {
        const auto& w = model.weights_for(i);
        cur = finish_linear(l, w, linear_part(l, w, cur));
        break;
      }
      case LayerKind::kMaxPool:
        cur = pool_layer(l, cur);
        break;
      case LayerKind::kSoftmax:
        fail(ErrorCode::kInvalidArgument, "forward_range cannot end at the softmax layer");
    }
  }
  return cur;
}

FloatTensor forward_to_output(const Model& model, const QuantizedTensor& x,
                              int first) {
  const int L = model.graph.size();
  if (model.graph.layer(L).kind != LayerKind::kSoftmax) {
    return dequantize(forward_range(model, x, first, L));
  }
  return softmax_layer(forward_range(model, x, first, L - 1));
}

}  // namespace origami
