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

#include "origami/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "origami/error.hpp"

namespace origami {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_size(std::string_view s, int line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, "model config line " + std::to_string(line_no) +
                                ": expected a non-negative integer, got '" +
                                std::string(s) + "'");
  }
  return v;
}

struct Attrs {
  std::map<std::string, std::size_t, std::less<>> values;
  int line_no;

  std::size_t get(std::string_view key, std::optional<std::size_t> def) const {
    auto it = values.find(key);
    if (it != values.end()) return it->second;
    if (!def) {
      fail(ErrorCode::kParse, "model config line " + std::to_string(line_no) +
                                  ": missing attribute '" + std::string(key) +
                                  "'");
    }
    return *def;
  }
};

Attrs parse_attrs(std::span<const std::string_view> tokens, int line_no,
                  std::initializer_list<std::string_view> allowed) {
  Attrs a{{}, line_no};
  for (auto tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kParse, "model config line " + std::to_string(line_no) +
                                  ": expected key=value, got '" +
                                  std::string(tok) + "'");
    }
    auto key = tok.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(ErrorCode::kParse, "model config line " + std::to_string(line_no) +
                                  ": unknown attribute '" + std::string(key) +
                                  "'");
    }
    a.values.emplace(std::string(key), parse_size(tok.substr(eq + 1), line_no));
  }
  return a;
}

// Fills in input/output shapes; throws on incompatible neighbours.
void derive_shapes(const Shape& input, std::vector<LayerSpec>& layers) {
  Shape cur = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto& l = layers[i];
    l.index = static_cast<int>(i + 1);
    l.input_shape = cur;
    const std::string where = "layer " + std::to_string(l.index) + " (" + l.name + ")";
    switch (l.kind) {
      case LayerKind::kConv: {
        if (cur.size() != 3) {
          fail(ErrorCode::kShapeMismatch, where + ": conv needs a spatial input, got " + shape_string(cur));
        }
        if (l.kernel == 0 || l.stride == 0 || l.outputs == 0) {
          fail(ErrorCode::kParse, where + ": kernel, stride and filters must be > 0");
        }
        if (cur[0] + 2 * l.padding < l.kernel || cur[1] + 2 * l.padding < l.kernel) {
          fail(ErrorCode::kShapeMismatch, where + ": kernel larger than padded input " + shape_string(cur));
        }
        cur = {(cur[0] + 2 * l.padding - l.kernel) / l.stride + 1,
               (cur[1] + 2 * l.padding - l.kernel) / l.stride + 1, l.outputs};
        break;
      }
      case LayerKind::kMaxPool: {
        if (cur.size() != 3) {
          fail(ErrorCode::kShapeMismatch, where + ": maxpool needs a spatial input, got " + shape_string(cur));
        }
        if (l.window == 0 || l.stride == 0) {
          fail(ErrorCode::kParse, where + ": window and stride must be > 0");
        }
        if (cur[0] < l.window || cur[1] < l.window) {
          fail(ErrorCode::kShapeMismatch, where + ": window larger than input " + shape_string(cur));
        }
        cur = {(cur[0] - l.window) / l.stride + 1, (cur[1] - l.window) / l.stride + 1, cur[2]};
        break;
      }
      case LayerKind::kDense:
        if (l.outputs == 0) fail(ErrorCode::kParse, where + ": units must be > 0");
        cur = {l.outputs};
        break;
      case LayerKind::kSoftmax:
        if (cur.size() != 1) {
          fail(ErrorCode::kShapeMismatch, where + ": softmax needs a flat input, got " + shape_string(cur));
        }
        if (i + 1 != layers.size()) {
          fail(ErrorCode::kParse, where + ": softmax must be the last layer");
        }
        break;
    }
    l.output_shape = cur;
  }
  if (!layers.empty() && layers.back().kind != LayerKind::kSoftmax) {
    fail(ErrorCode::kParse, "model must end with exactly one softmax layer");
  }
}

}  // namespace

std::string_view layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kMaxPool: return "maxpool";
    case LayerKind::kDense: return "dense";
    case LayerKind::kSoftmax: return "softmax";
  }
  return "?";
}

Shape LayerSpec::kernel_shape() const {
  switch (kind) {
    case LayerKind::kConv:
      return {kernel, kernel, input_shape.empty() ? 0 : input_shape.back(), outputs};
    case LayerKind::kDense:
      return {element_count(input_shape), outputs};
    default:
      return {};
  }
}

std::size_t LayerSpec::kernel_elements() const {
  return is_linear(kind) ? element_count(kernel_shape()) : 0;
}

std::uint64_t LayerSpec::macs() const {
  switch (kind) {
    case LayerKind::kConv:
      return static_cast<std::uint64_t>(output_elements()) * kernel * kernel *
             input_shape.back();
    case LayerKind::kDense:
      return static_cast<std::uint64_t>(input_elements()) * outputs;
    default:
      return 0;
  }
}

ModelGraph::ModelGraph(std::string name, Shape input_shape,
                       std::vector<LayerSpec> layers)
    : name_(std::move(name)),
      input_shape_(std::move(input_shape)),
      layers_(std::move(layers)) {
  derive_shapes(input_shape_, layers_);
}

const LayerSpec& ModelGraph::layer(int index) const {
  if (index < 1 || index > size()) {
    fail(ErrorCode::kIndexOutOfRange,
         "layer index " + std::to_string(index) + " outside [1, " +
             std::to_string(size()) + "]");
  }
  return layers_[static_cast<std::size_t>(index - 1)];
}

ModelGraph ModelGraph::with_input(Shape input_shape) const {
  return ModelGraph(name_, std::move(input_shape), layers_);
}

std::size_t ModelGraph::parameterized_layers() const {
  return count(LayerKind::kConv) + count(LayerKind::kDense);
}

std::size_t ModelGraph::count(LayerKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      layers_.begin(), layers_.end(), [&](const auto& l) { return l.kind == kind; }));
}

std::size_t ModelGraph::max_fan_in() const {
  std::size_t m = 0;
  for (const auto& l : layers_) {
    if (l.kind == LayerKind::kConv) m = std::max(m, l.kernel * l.kernel * l.input_shape.back());
    if (l.kind == LayerKind::kDense) m = std::max(m, l.input_elements());
  }
  return m;
}

std::string ModelGraph::to_config() const {
  std::ostringstream os;
  os << "origami-model 1\n";
  os << "name " << name_ << "\n";
  os << "input";
  for (auto d : input_shape_) os << ' ' << d;
  os << "\n";
  for (const auto& l : layers_) {
    switch (l.kind) {
      case LayerKind::kConv:
        os << "conv " << l.name << " kernel=" << l.kernel << " filters=" << l.outputs
           << " stride=" << l.stride << " padding=" << l.padding
           << " relu=" << l.relu << " bias=" << l.bias << "\n";
        break;
      case LayerKind::kMaxPool:
        os << "maxpool " << l.name << " window=" << l.window << " stride=" << l.stride << "\n";
        break;
      case LayerKind::kDense:
        os << "dense " << l.name << " units=" << l.outputs << " relu=" << l.relu
           << " bias=" << l.bias << "\n";
        break;
      case LayerKind::kSoftmax:
        os << "softmax " << l.name << "\n";
        break;
    }
  }
  return os.str();
}

ModelGraph parse_model_config(std::string_view text) {
  std::string name = "model";
  Shape input;
  std::vector<LayerSpec> layers;
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const auto kw = tok[0];
    const auto rest = std::span<const std::string_view>(tok).subspan(1);
    const std::string at = "model config line " + std::to_string(line_no);
    if (kw == "origami-model") {
      if (tok.size() != 2 || tok[1] != "1") fail(ErrorCode::kParse, at + ": unsupported config version");
      header = true;
      continue;
    }
    if (!header) fail(ErrorCode::kParse, at + ": missing 'origami-model 1' header");
    if (kw == "name") {
      if (tok.size() != 2) fail(ErrorCode::kParse, at + ": name takes one token");
      name = std::string(tok[1]);
    } else if (kw == "input") {
      if (tok.size() < 2) fail(ErrorCode::kParse, at + ": input needs dimensions");
      input.clear();
      for (auto t : rest) input.push_back(parse_size(t, line_no));
    } else if (kw == "relu") {
      if (layers.empty() || !is_linear(layers.back().kind)) {
        fail(ErrorCode::kParse, at + ": relu must follow a conv or dense layer");
      }
      layers.back().relu = true;
    } else {
      if (tok.size() < 2) fail(ErrorCode::kParse, at + ": layer needs a name");
      LayerSpec l;
      l.name = std::string(tok[1]);
      auto attrs = rest.subspan(1);
      if (kw == "conv") {
        auto a = parse_attrs(attrs, line_no, {"kernel", "filters", "stride", "padding", "relu", "bias"});
        l.kind = LayerKind::kConv;
        l.kernel = a.get("kernel", std::nullopt);
        l.outputs = a.get("filters", std::nullopt);
        l.stride = a.get("stride", 1);
        l.padding = a.get("padding", 0);
        l.relu = a.get("relu", 0) != 0;
        l.bias = a.get("bias", 0) != 0;
      } else if (kw == "maxpool") {
        auto a = parse_attrs(attrs, line_no, {"window", "stride"});
        l.kind = LayerKind::kMaxPool;
        l.window = a.get("window", std::nullopt);
        l.stride = a.get("stride", l.window);
      } else if (kw == "dense") {
        auto a = parse_attrs(attrs, line_no, {"units", "relu", "bias"});
        l.kind = LayerKind::kDense;
        l.outputs = a.get("units", std::nullopt);
        l.relu = a.get("relu", 0) != 0;
        l.bias = a.get("bias", 0) != 0;
      } else if (kw == "softmax") {
        parse_attrs(attrs, line_no, {});
        l.kind = LayerKind::kSoftmax;
      } else {
        fail(ErrorCode::kUnknownLayerKind, at + ": unknown layer kind '" + std::string(kw) + "'");
      }
      layers.push_back(std::move(l));
    }
  }
  if (!header) fail(ErrorCode::kParse, "model config is empty");
  if (layers.empty()) fail(ErrorCode::kParse, "model config declares no layers");
  if (input.empty()) fail(ErrorCode::kParse, "model config has no input shape");
  return ModelGraph(std::move(name), std::move(input), std::move(layers));
}

Model attach_weights(const ModelGraph& graph,
                     std::span<const WeightRecord> records,
                     const FieldParams& field) {
  field.validate();
  std::map<std::string, const WeightRecord*, std::less<>> by_name;
  for (const auto& r : records) by_name[r.name] = &r;

  Model model{graph, field, {}};
  model.weights.resize(graph.layers().size());
  for (const auto& l : graph.layers()) {
    if (!is_linear(l.kind)) continue;
    auto& w = model.weights[static_cast<std::size_t>(l.index - 1)];
    const auto kname = l.name + ".weight";
    auto it = by_name.find(kname);
    if (it == by_name.end()) {
      fail(ErrorCode::kMissingWeights, "missing weights '" + kname + "' for layer " + std::to_string(l.index));
    }
    if (it->second->shape != l.kernel_shape()) {
      fail(ErrorCode::kShapeMismatch, "weights '" + kname + "' have shape " + shape_string(it->second->shape) +
                                          ", layer expects " + shape_string(l.kernel_shape()));
    }
    w.kernel = quantize(FloatTensor(l.kernel_shape(), it->second->as_doubles()), field);
    w.centered = CenteredWeights::from(w.kernel);
    if (l.bias) {
      const auto bname = l.name + ".bias";
      auto bt = by_name.find(bname);
      if (bt == by_name.end()) {
        fail(ErrorCode::kMissingWeights, "missing weights '" + bname + "' for layer " + std::to_string(l.index));
      }
      if (bt->second->shape != Shape{l.outputs}) {
        fail(ErrorCode::kShapeMismatch, "weights '" + bname + "' have shape " + shape_string(bt->second->shape) +
                                            ", layer expects [" + std::to_string(l.outputs) + "]");
      }
      auto b = quantize(FloatTensor({l.outputs}, bt->second->as_doubles()), field.scale * field.scale,
                        field.modulus);
      w.bias.assign(b.values().begin(), b.values().end());
    }
  }
  return model;
}

Model load_model(std::string_view config_text,
                 std::span<const std::uint8_t> weights_bytes,
                 const FieldParams& field) {
  auto graph = parse_model_config(config_text);
  auto records = decode_weights(weights_bytes);
  return attach_weights(graph, records, field);
}

std::vector<WeightRecord> random_weights(const ModelGraph& graph,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<WeightRecord> out;
  for (const auto& l : graph.layers()) {
    if (!is_linear(l.kind)) continue;
    const auto shape = l.kernel_shape();
    const auto fan_in = static_cast<double>(shape[shape.size() - 2] *
                                            (l.kind == LayerKind::kConv ? l.kernel * l.kernel : 1));
    std::normal_distribution<float> normal(0.0f, static_cast<float>(std::sqrt(2.0 / fan_in)));
    std::vector<float> k(element_count(shape));
    for (auto& v : k) v = normal(rng);
    out.push_back(WeightRecord::from_floats(l.name + ".weight", shape, k));
    if (l.bias) {
      std::uniform_real_distribution<float> uni(-0.05f, 0.05f);
      std::vector<float> b(l.outputs);
      for (auto& v : b) v = uni(rng);
      out.push_back(WeightRecord::from_floats(l.name + ".bias", {l.outputs}, b));
    }
  }
  return out;
}

FeatureMapSummary feature_map_bytes(const ModelGraph& graph,
                                    const Shape& input_shape) {
  const ModelGraph g = input_shape == graph.input_shape() ? graph : graph.with_input(input_shape);
  FeatureMapSummary s;
  s.input_bytes = element_count(input_shape) * kActivationBytes;
  for (const auto& l : g.layers()) {
    const std::uint64_t b = l.output_elements() * kActivationBytes;
    s.per_layer.push_back(b);
    s.max_bytes = std::max(s.max_bytes, b);
    if (l.kind == LayerKind::kConv) s.conv_sum_bytes += b;
  }
  return s;
}

std::uint64_t layer_params_bytes(const ModelGraph& graph, int index,
                                 std::uint64_t bytes_per_element) {
  return graph.layer(index).kernel_elements() * bytes_per_element;
}

std::uint64_t layer_bias_bytes(const ModelGraph& graph, int index,
                               std::uint64_t bytes_per_element) {
  return graph.layer(index).bias_elements() * bytes_per_element;
}

std::string vgg_config(int depth, std::size_t height, std::size_t width) {
  std::vector<int> blocks;
  if (depth == 16) {
    blocks = {2, 2, 3, 3, 3};
  } else if (depth == 19) {
    blocks = {2, 2, 4, 4, 4};
  } else {
    fail(ErrorCode::kInvalidArgument, "vgg depth must be 16 or 19");
  }
  const int filters[] = {64, 128, 256, 512, 512};
  std::ostringstream os;
  os << "origami-model 1\nname vgg" << depth << "\ninput " << height << ' ' << width << " 3\n";
  for (int b = 0; b < 5; ++b) {
    for (int c = 0; c < blocks[static_cast<std::size_t>(b)]; ++c) {
      os << "conv conv" << b + 1 << '_' << c + 1 << " kernel=3 filters=" << filters[b]
         << " stride=1 padding=1 relu=1 bias=1\n";
    }
    os << "maxpool pool" << b + 1 << " window=2 stride=2\n";
  }
  os << "dense fc1 units=4096 relu=1 bias=1\n"
     << "dense fc2 units=4096 relu=1 bias=1\n"
     << "dense fc3 units=1000 relu=0 bias=1\n"
     << "softmax prob\n";
  return os.str();
}

std::string toy_config() {
  return "origami-model 1\n"
         "name toy5\n"
         "input 8 8 3\n"
         "conv c1 kernel=3 filters=4 stride=1 padding=1 relu=1 bias=1\n"
         "maxpool p1 window=2 stride=2\n"
         "conv c2 kernel=3 filters=6 stride=1 padding=1 relu=1 bias=1\n"
         "dense d1 units=10 relu=0 bias=1\n"
         "softmax prob\n";
}

}  // namespace origami
