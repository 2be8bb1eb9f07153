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
#include <string>
#include <vector>

#include "origami/tensor.hpp"

namespace origami {

// Weights binary layout (little-endian):
//   "ORGW" | u32 version | u32 record count
//   per record: u32 name length | name | u8 dtype | u8 rank | u32 dims[rank]
//               | raw element data
inline constexpr std::uint32_t kWeightsVersion = 1;

enum class DType : std::uint8_t { kFloat32 = 0, kInt32 = 1, kInt8 = 2 };

std::size_t dtype_size(DType t);

struct WeightRecord {
  std::string name;
  DType dtype = DType::kFloat32;
  Shape shape;
  std::vector<std::uint8_t> raw;

  static WeightRecord from_floats(std::string name, Shape shape,
                                  std::span<const float> values);
  std::vector<double> as_doubles() const;
};

std::vector<std::uint8_t> encode_weights(std::span<const WeightRecord> records);
std::vector<WeightRecord> decode_weights(std::span<const std::uint8_t> bytes);

}  // namespace origami
