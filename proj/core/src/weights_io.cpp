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

#include "origami/weights_io.hpp"

#include <bit>

#include "bytes.hpp"
#include "origami/error.hpp"

namespace origami {

std::size_t dtype_size(DType t) {
  switch (t) {
    case DType::kFloat32: return 4;
    case DType::kInt32: return 4;
    case DType::kInt8: return 1;
  }
  fail(ErrorCode::kCorrupt, "unknown dtype tag");
}

WeightRecord WeightRecord::from_floats(std::string name, Shape shape,
                                       std::span<const float> values) {
  if (element_count(shape) != values.size()) {
    fail(ErrorCode::kShapeMismatch, "weight record '" + name + "' shape " +
                                        shape_string(shape) +
                                        " does not match data");
  }
  ByteWriter w;
  w.buffer().reserve(values.size() * 4);
  for (float v : values) w.f32(v);
  return WeightRecord{std::move(name), DType::kFloat32, std::move(shape),
                      w.take()};
}

std::vector<double> WeightRecord::as_doubles() const {
  const std::size_t n = element_count(shape);
  std::vector<double> out(n);
  ByteReader r(raw, "weight record '" + name + "'");
  for (std::size_t i = 0; i < n; ++i) {
    switch (dtype) {
      case DType::kFloat32: out[i] = r.f32(); break;
      case DType::kInt32: out[i] = static_cast<std::int32_t>(r.u32()); break;
      case DType::kInt8: out[i] = static_cast<std::int8_t>(r.u8()); break;
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_weights(std::span<const WeightRecord> records) {
  ByteWriter w;
  w.magic("ORGW");
  w.u32(kWeightsVersion);
  w.u32(static_cast<std::uint32_t>(records.size()));
  for (const auto& rec : records) {
    if (rec.raw.size() != element_count(rec.shape) * dtype_size(rec.dtype)) {
      fail(ErrorCode::kShapeMismatch,
           "weight record '" + rec.name + "' raw size does not match shape");
    }
    if (rec.shape.size() > 255) {
      fail(ErrorCode::kInvalidArgument, "weight record rank too large");
    }
    w.str(rec.name);
    w.u8(static_cast<std::uint8_t>(rec.dtype));
    w.u8(static_cast<std::uint8_t>(rec.shape.size()));
    for (auto d : rec.shape) w.u32(static_cast<std::uint32_t>(d));
    w.bytes(rec.raw);
  }
  return w.take();
}

std::vector<WeightRecord> decode_weights(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "weights file");
  r.expect_magic("ORGW");
  const auto version = r.u32();
  if (version != kWeightsVersion) {
    fail(ErrorCode::kCorrupt,
         "weights file: unsupported version " + std::to_string(version));
  }
  const auto count = r.u32();
  std::vector<WeightRecord> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    WeightRecord rec;
    rec.name = r.str(4096);
    const auto tag = r.u8();
    if (tag > 2) {
      fail(ErrorCode::kCorrupt, "weights file: record '" + rec.name +
                                    "' has unknown dtype tag " +
                                    std::to_string(tag));
    }
    rec.dtype = static_cast<DType>(tag);
    const auto rank = r.u8();
    for (int d = 0; d < rank; ++d) rec.shape.push_back(r.u32());
    const auto n = element_count(rec.shape) * dtype_size(rec.dtype);
    auto raw = r.bytes(n);
    rec.raw.assign(raw.begin(), raw.end());
    out.push_back(std::move(rec));
  }
  if (!r.done()) {
    fail(ErrorCode::kCorrupt, "weights file: trailing bytes after records");
  }
  return out;
}

}  // namespace origami
