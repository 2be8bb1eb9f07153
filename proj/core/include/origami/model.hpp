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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "origami/kernels.hpp"
#include "origami/tensor.hpp"
#include "origami/weights_io.hpp"

namespace origami {

enum class LayerKind { kConv, kMaxPool, kDense, kSoftmax };

std::string_view layer_kind_name(LayerKind kind);

inline bool is_linear(LayerKind k) {
  return k == LayerKind::kConv || k == LayerKind::kDense;
}

// One indexable layer. ReLU is a flag on the conv/dense that precedes it.
// Shapes exclude the batch dimension: [H, W, C] for spatial maps, [F] flat.
struct LayerSpec {
  int index = 0;  // 1-based
  LayerKind kind = LayerKind::kConv;
  std::string name;
  std::size_t kernel = 0;   // conv: square kernel side
  std::size_t outputs = 0;  // conv filters / dense units
  std::size_t stride = 1;
  std::size_t padding = 0;
  std::size_t window = 0;  // maxpool
  bool relu = false;
  bool bias = false;
  Shape input_shape;
  Shape output_shape;

  Shape kernel_shape() const;
  std::size_t kernel_elements() const;
  std::size_t bias_elements() const { return bias ? outputs : 0; }
  std::uint64_t macs() const;
  std::size_t input_elements() const { return element_count(input_shape); }
  std::size_t output_elements() const { return element_count(output_shape); }
};

class ModelGraph {
 public:
  ModelGraph() = default;
  ModelGraph(std::string name, Shape input_shape, std::vector<LayerSpec> layers);

  const std::string& name() const { return name_; }
  const Shape& input_shape() const { return input_shape_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  int size() const { return static_cast<int>(layers_.size()); }
  bool empty() const { return layers_.empty(); }

  // 1-based; throws kIndexOutOfRange.
  const LayerSpec& layer(int index) const;

  // Same layer list re-derived for a different input shape.
  ModelGraph with_input(Shape input_shape) const;

  std::size_t parameterized_layers() const;
  std::size_t count(LayerKind kind) const;
  std::size_t max_fan_in() const;

  std::string to_config() const;

 private:
  std::string name_;
  Shape input_shape_;
  std::vector<LayerSpec> layers_;
};

// Config text grammar (line oriented, '#' starts a comment):
//   origami-model 1
//   name <string>
//   input <H> <W> <C>
//   conv <name> kernel=<k> filters=<n> [stride=1] [padding=0] [relu=0|1] [bias=0|1]
//   maxpool <name> window=<w> [stride=<w>]
//   dense <name> units=<n> [relu=0|1] [bias=0|1]
//   relu                      (fuses into the preceding conv/dense)
//   softmax <name>
ModelGraph parse_model_config(std::string_view text);

struct LayerWeights {
  QuantizedTensor kernel;
  CenteredWeights centered;
  // Residues at activation_scale * weight_scale, added before rescaling.
  std::vector<std::uint32_t> bias;
};

struct Model {
  ModelGraph graph;
  FieldParams field;
  std::vector<LayerWeights> weights;  // aligned with graph.layers()

  const LayerWeights& weights_for(int index) const {
    return weights.at(static_cast<std::size_t>(index - 1));
  }
};

// Expects records "<layer>.weight" (and "<layer>.bias" when the layer has a
// bias) in float32; kernels are [k, k, Cin, Cout] and dense weights [F, O].
Model attach_weights(const ModelGraph& graph,
                     std::span<const WeightRecord> records,
                     const FieldParams& field = {});

Model load_model(std::string_view config_text,
                 std::span<const std::uint8_t> weights_bytes,
                 const FieldParams& field = {});

// He-normal kernels and small uniform biases, deterministic in `seed`.
std::vector<WeightRecord> random_weights(const ModelGraph& graph,
                                         std::uint64_t seed);

struct FeatureMapSummary {
  std::vector<std::uint64_t> per_layer;  // output bytes, index i -> layer i+1
  std::uint64_t input_bytes = 0;
  std::uint64_t max_bytes = 0;
  std::uint64_t conv_sum_bytes = 0;
};

inline constexpr std::uint64_t kActivationBytes = 4;

FeatureMapSummary feature_map_bytes(const ModelGraph& graph,
                                    const Shape& input_shape);
inline FeatureMapSummary feature_map_bytes(const ModelGraph& graph) {
  return feature_map_bytes(graph, graph.input_shape());
}

std::uint64_t layer_params_bytes(const ModelGraph& graph, int index,
                                 std::uint64_t bytes_per_element = 4);
std::uint64_t layer_bias_bytes(const ModelGraph& graph, int index,
                               std::uint64_t bytes_per_element = 4);

// Built-in configurations.
std::string vgg_config(int depth, std::size_t height = 224,
                       std::size_t width = 224);
std::string toy_config();  // 5 layers: conv, maxpool, conv, dense, softmax

}  // namespace origami
