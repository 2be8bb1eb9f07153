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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "origami/model.hpp"

namespace origami {

struct DatasetImage {
  std::string id;
  std::string reference;  // source file, relative to the dataset
  FloatTensor image;      // [H, W, C]
};

// Every image in `dir` (sorted by name); id is the file stem.
std::vector<DatasetImage> load_dataset(const std::filesystem::path& dir);

struct FeatureMapRecord {
  std::string image_id;
  std::string reference;
  FloatTensor map;  // layer output shape, float32 precision on disk
};

struct FeatureMapFile {
  int layer_index = 0;
  Shape shape;
  std::vector<FeatureMapRecord> records;
};

// Interchange format (little endian):
//   "ORGF" u32 version=1 u32 layer_index u8 rank u32[rank] dims u32 count
//   per record: str image_id, str reference, f32[n] values
// where str is u32 length + UTF-8 bytes.
inline constexpr std::uint32_t kFeatureMapVersion = 1;
std::vector<std::uint8_t> encode_feature_maps(const FeatureMapFile& file);
FeatureMapFile decode_feature_maps(std::span<const std::uint8_t> bytes);

struct ManifestEntry {
  std::string image_id;
  std::string reference;
  std::string sha256;  // of the record's float32 payload
};

struct FeatureMapManifest {
  std::string model;
  int layer_index = 0;
  std::string layer_name;
  Shape shape;
  std::string maps_file;
  std::string maps_sha256;
  std::vector<ManifestEntry> entries;
};

std::string manifest_to_json(const FeatureMapManifest& m);
FeatureMapManifest manifest_from_json(std::string_view text, std::string_view source);

// Runs layers 1..layer_index in the clear for every image and writes
// layer_<index>.orgf plus manifest.json into `out_dir`.
FeatureMapManifest export_feature_maps(const Model& model, int layer_index,
                                       std::span<const DatasetImage> dataset,
                                       const std::filesystem::path& out_dir);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace origami
