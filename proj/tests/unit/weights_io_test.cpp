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

#include <gtest/gtest.h>

#include <cstring>

#include "origami/error.hpp"
#include "origami/weights_io.hpp"

namespace origami {
namespace {

TEST(WeightsIo, RoundTripPreservesRecords) {
  const std::vector<float> a{1.0f, -2.5f, 3.25f, 0.0f, 7.0f, -0.125f};
  const std::vector<float> b{0.5f, 0.25f};
  std::vector<WeightRecord> recs{WeightRecord::from_floats("conv.weight", {1, 1, 2, 3}, a),
                                 WeightRecord::from_floats("conv.bias", {2}, b)};
  const auto bytes = encode_weights(recs);
  const auto back = decode_weights(bytes);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].name, "conv.weight");
  EXPECT_EQ(back[0].shape, (Shape{1, 1, 2, 3}));
  EXPECT_EQ(back[0].dtype, DType::kFloat32);
  EXPECT_EQ(back[0].raw, recs[0].raw);
  const auto d = back[0].as_doubles();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(d[i], a[i]);
  EXPECT_EQ(back[1].as_doubles(), (std::vector<double>{0.5, 0.25}));
}

TEST(WeightsIo, EmptyFileHasNoRecords) {
  const auto bytes = encode_weights({});
  EXPECT_TRUE(decode_weights(bytes).empty());
}

TEST(WeightsIo, IntegerDtypes) {
  WeightRecord r;
  r.name = "q";
  r.dtype = DType::kInt8;
  r.shape = {3};
  r.raw = {0x01, 0xff, 0x7f};
  const auto d = r.as_doubles();
  EXPECT_EQ(d, (std::vector<double>{1.0, -1.0, 127.0}));
  WeightRecord i32;
  i32.name = "w";
  i32.dtype = DType::kInt32;
  i32.shape = {1};
  const std::int32_t v = -70000;
  i32.raw.resize(4);
  std::memcpy(i32.raw.data(), &v, 4);
  EXPECT_EQ(i32.as_doubles()[0], -70000.0);
  EXPECT_EQ(dtype_size(DType::kInt32), 4u);
  EXPECT_EQ(dtype_size(DType::kInt8), 1u);
}

TEST(WeightsIo, ShapeMismatchRejected) {
  const std::vector<float> a{1.0f, 2.0f, 3.0f};
  EXPECT_THROW(WeightRecord::from_floats("w", {2, 2}, a), Error);
}

TEST(WeightsIo, TruncationAndTrailingBytesAreCorrupt) {
  const std::vector<float> a{1.0f, 2.0f};
  std::vector<WeightRecord> recs{WeightRecord::from_floats("w", {2}, a)};
  auto bytes = encode_weights(recs);
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, bytes.size() / 2, bytes.size() - 1}) {
    std::vector<std::uint8_t> t(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    try {
      decode_weights(t);
      FAIL() << "cut " << cut;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCorrupt) << "cut " << cut;
    }
  }
  bytes.push_back(0);
  EXPECT_THROW(decode_weights(bytes), Error);
  auto bad = encode_weights(recs);
  bad[0] ^= 0xff;
  EXPECT_THROW(decode_weights(bad), Error);
}

}  // namespace
}  // namespace origami
