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

#include "origami/feature_maps.hpp"

#include <sodium.h>

#include <fstream>

#include "bytes.hpp"
#include "json.hpp"
#include "origami/error.hpp"
#include "origami/image_io.hpp"
#include "origami/layer_ops.hpp"

namespace origami {
namespace {

void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "cannot write " + p.string());
}

std::vector<std::uint8_t> float32_payload(const FloatTensor& t) {
  ByteWriter w;
  for (double v : t.values()) w.f32(static_cast<float>(v));
  return w.take();
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  if (sodium_init() < 0) fail(ErrorCode::kInvalidArgument, "libsodium unavailable");
  std::array<std::uint8_t, crypto_hash_sha256_BYTES> h{};
  crypto_hash_sha256(h.data(), bytes.data(), bytes.size());
  std::string hex(h.size() * 2 + 1, '\0');
  sodium_bin2hex(hex.data(), hex.size(), h.data(), h.size());
  hex.pop_back();
  return hex;
}

std::vector<DatasetImage> load_dataset(const std::filesystem::path& dir) {
  std::vector<DatasetImage> out;
  for (const auto& p : list_images(dir)) {
    out.push_back({p.stem().string(), p.filename().string(), read_image(p)});
  }
  return out;
}

std::vector<std::uint8_t> encode_feature_maps(const FeatureMapFile& f) {
  ByteWriter w;
  w.magic("ORGF");
  w.u32(kFeatureMapVersion);
  w.u32(static_cast<std::uint32_t>(f.layer_index));
  w.u8(static_cast<std::uint8_t>(f.shape.size()));
  for (auto d : f.shape) w.u32(static_cast<std::uint32_t>(d));
  w.u32(static_cast<std::uint32_t>(f.records.size()));
  for (const auto& r : f.records) {
    if (r.map.shape() != f.shape) {
      fail(ErrorCode::kShapeMismatch, "feature map for " + r.image_id + " has shape " +
                                          shape_string(r.map.shape()) + ", file declares " +
                                          shape_string(f.shape));
    }
    w.str(r.image_id);
    w.str(r.reference);
    w.bytes(float32_payload(r.map));
  }
  return w.take();
}

FeatureMapFile decode_feature_maps(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "feature map file");
  r.expect_magic("ORGF");
  if (r.u32() != kFeatureMapVersion) fail(ErrorCode::kCorrupt, "feature map file: unsupported version");
  FeatureMapFile f;
  f.layer_index = static_cast<int>(r.u32());
  f.shape.resize(r.u8());
  for (auto& d : f.shape) d = r.u32();
  const auto count = r.u32();
  const auto n = element_count(f.shape);
  for (std::uint32_t i = 0; i < count; ++i) {
    FeatureMapRecord rec;
    rec.image_id = r.str();
    rec.reference = r.str();
    if (n * 4 > r.remaining()) fail(ErrorCode::kCorrupt, "feature map file: truncated record");
    std::vector<double> v(n);
    for (auto& x : v) x = r.f32();
    rec.map = FloatTensor(f.shape, std::move(v));
    f.records.push_back(std::move(rec));
  }
  r.done();
  return f;
}

std::string manifest_to_json(const FeatureMapManifest& m) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& e : m.entries) {
    records.push_back({{"image_id", e.image_id}, {"reference", e.reference}, {"sha256", e.sha256}});
  }
  nlohmann::ordered_json doc = {{"format", "origami-feature-maps"},
                                {"version", kFeatureMapVersion},
                                {"model", m.model},
                                {"layer", m.layer_index},
                                {"layer_name", m.layer_name},
                                {"shape", m.shape},
                                {"count", m.entries.size()},
                                {"maps_file", m.maps_file},
                                {"maps_sha256", m.maps_sha256},
                                {"records", records}};
  return doc.dump(2) + "\n";
}

FeatureMapManifest manifest_from_json(std::string_view text, std::string_view source) {
  try {
    const auto doc = nlohmann::ordered_json::parse(text);
    if (doc.at("format") != "origami-feature-maps") fail(ErrorCode::kCorrupt, "not a feature map manifest");
    FeatureMapManifest m;
    m.model = doc.at("model").get<std::string>();
    m.layer_index = doc.at("layer").get<int>();
    m.layer_name = doc.at("layer_name").get<std::string>();
    m.shape = doc.at("shape").get<Shape>();
    m.maps_file = doc.at("maps_file").get<std::string>();
    m.maps_sha256 = doc.at("maps_sha256").get<std::string>();
    for (const auto& e : doc.at("records")) {
      m.entries.push_back({e.at("image_id").get<std::string>(), e.at("reference").get<std::string>(),
                           e.at("sha256").get<std::string>()});
    }
    if (doc.at("count").get<std::size_t>() != m.entries.size()) {
      fail(ErrorCode::kCorrupt, "record count mismatch");
    }
    return m;
  } catch (const std::exception& e) {
    fail(ErrorCode::kCorrupt, "manifest " + std::string(source) + ": " + e.what());
  }
}

FeatureMapManifest export_feature_maps(const Model& model, int layer_index,
                                       std::span<const DatasetImage> dataset,
                                       const std::filesystem::path& out_dir) {
  const auto& layer = model.graph.layer(layer_index);
  FeatureMapFile file;
  file.layer_index = layer_index;
  file.shape = layer.output_shape;
  FeatureMapManifest m;
  m.model = model.graph.name();
  m.layer_index = layer_index;
  m.layer_name = layer.name;
  m.shape = layer.output_shape;
  m.maps_file = "layer_" + std::to_string(layer_index) + ".orgf";
  for (const auto& img : dataset) {
    if (img.image.shape() != model.graph.input_shape()) {
      fail(ErrorCode::kShapeMismatch, "image " + img.id + " has shape " +
                                          shape_string(img.image.shape()) + ", model expects " +
                                          shape_string(model.graph.input_shape()));
    }
    const auto x = quantize(FloatTensor(batched(img.image.shape()),
                                        {img.image.values().begin(), img.image.values().end()}),
                            model.field);
    FloatTensor out;
    if (layer.kind == LayerKind::kSoftmax) {
      out = forward_to_output(model, x, 1);
    } else {
      out = dequantize(forward_range(model, x, 1, layer_index));
    }
    FeatureMapRecord rec{img.id, img.reference,
                         FloatTensor(layer.output_shape, {out.values().begin(), out.values().end()})};
    m.entries.push_back({img.id, img.reference, sha256_hex(float32_payload(rec.map))});
    file.records.push_back(std::move(rec));
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  const auto bytes = encode_feature_maps(file);
  m.maps_sha256 = sha256_hex(bytes);
  write_file(out_dir / m.maps_file, bytes);
  const auto json = manifest_to_json(m);
  write_file(out_dir / "manifest.json",
             {reinterpret_cast<const std::uint8_t*>(json.data()), json.size()});
  return m;
}

}  // namespace origami
