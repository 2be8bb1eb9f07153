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

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "origami/blinding.hpp"
#include "origami/error.hpp"
#include "origami/executor.hpp"
#include "origami/keystream.hpp"
#include "origami/layer_ops.hpp"

namespace origami {
namespace {

using testing::random_field_tensor;

const char* kSmallConfig =
    "origami-model 1\nname small\ninput 5 5 2\n"
    "conv c1 kernel=3 filters=3 stride=1 padding=1 relu=1 bias=1\n"
    "dense d1 units=6 relu=0 bias=1\n"
    "softmax prob\n";

LayerWeights field_weights(const Shape& shape, std::mt19937_64& rng) {
  LayerWeights w;
  w.kernel = random_field_tensor(shape, rng);
  w.centered = CenteredWeights::from(w.kernel);
  return w;
}

TEST(Blinding, ZeroFactorsLeaveInputUnchanged) {
  std::mt19937_64 rng(1);
  const auto x = random_field_tensor({1, 4, 4, 2}, rng);
  const auto zero = QuantizedTensor::zeros(x.shape(), x.scale(), x.modulus());
  EXPECT_EQ(blind(x, zero), x);
}

TEST(Blinding, AdditionWrapsModP) {
  const std::uint32_t p = kDefaultModulus;
  const QuantizedTensor x({2}, {p - 1, 5}, 1, p);
  const QuantizedTensor r({2}, {3, p - 5}, 1, p);
  const auto b = blind(x, r);
  EXPECT_EQ(b[0], 2u);
  EXPECT_EQ(b[1], 0u);
  EXPECT_THROW(blind(x, QuantizedTensor({3}, {1, 2, 3}, 1, p)), Error);
  EXPECT_THROW(blind(x, QuantizedTensor({2}, {1, 2}, 2, p)), Error);
}

TEST(Blinding, PrecomputeMatchesNaiveLinearMap) {
  std::mt19937_64 rng(2);
  const auto g = parse_model_config(kSmallConfig);
  const auto& conv = g.layer(1);
  const auto cw = field_weights(conv.kernel_shape(), rng);
  const auto r = random_field_tensor({1, 5, 5, 2}, rng);
  EXPECT_EQ(precompute_unblinding(conv, cw, r).u, oracle::conv2d(r, cw.kernel, 1, 1));
  const auto zero = QuantizedTensor::zeros({1, 5, 5, 2}, 1, kDefaultModulus);
  const auto zero_rec = precompute_unblinding(conv, cw, zero);
  for (auto v : zero_rec.u.values()) EXPECT_EQ(v, 0u);

  const auto& d = g.layer(2);
  std::vector<std::uint32_t> eye(75 * 6, 0);
  for (std::size_t i = 0; i < 6; ++i) eye[i * 6 + i] = 1;
  LayerWeights ident;
  ident.kernel = QuantizedTensor({75, 6}, eye, 1, kDefaultModulus);
  ident.centered = CenteredWeights::from(ident.kernel);
  const auto rd = random_field_tensor({1, 5, 5, 3}, rng);
  const auto u = precompute_unblinding(d, ident, rd).u;
  ASSERT_EQ(u.shape(), (Shape{1, 6}));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(u[i], rd[i]);
  EXPECT_THROW(precompute_unblinding(d, ident, r), Error);
}

TEST(Blinding, UnblindedLinearEqualsClearLinear) {
  std::mt19937_64 rng(3);
  const auto g = parse_model_config(kSmallConfig);
  const std::uint32_t p = kDefaultModulus;
  BlindingStream stream(seed_from_u64(77), p);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& layer = g.layer(trial % 2 == 0 ? 1 : 2);
    const auto w = field_weights(layer.kernel_shape(), rng);
    const auto x = random_field_tensor(batched(layer.input_shape), rng);
    const auto r = gen_factors(stream, x.shape(), x.scale());
    const auto rec = precompute_unblinding(layer, w, r);
    const auto z = linear_part(layer, w, blind(x, r));
    ASSERT_EQ(unblind(z, rec), linear_part(layer, w, x)) << "trial " << trial;
  }
}

TEST(Blinding, ReluIsNotDecodableAfterBlinding) {
  std::mt19937_64 rng(4);
  const std::uint32_t p = kDefaultModulus;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::random_small_tensor({1, 64}, rng, 1000);
    const auto r = random_field_tensor({1, 64}, rng);
    const auto lhs = relu(blind(x, r));
    const auto rr = relu(r);
    for (std::size_t i = 0; i < 64; ++i) {
      if (sub_mod(lhs[i], rr[i], p) != relu(x)[i]) ++mismatches;
    }
  }
  EXPECT_GT(mismatches, 1000u);
}

TEST(Blinding, SealedRecordRoundTripAndTamper) {
  std::mt19937_64 rng(5);
  UnblindingRecord rec;
  rec.layer_index = 4;
  rec.u = random_field_tensor({1, 3, 3, 2}, rng, kDefaultModulus, 65536);
  rec.bias = {1, 2};
  const auto key = storage_key_from_u64(99);
  const std::vector<UnblindingRecord> recs{rec};
  const auto blob = seal_unblinding(12, recs, key);
  EXPECT_EQ(blob.records[0].payload_bytes(), (18u + 2u) * 4u);
  const auto decoded = decode_blob(encode_blob(blob));
  const auto back = open_unblinding(decoded, 4, key);
  EXPECT_EQ(back.u, rec.u);
  EXPECT_EQ(back.bias, rec.bias);
  EXPECT_TRUE(back.encrypted_at_rest);

  auto flipped = decoded;
  flipped.records[0].ciphertext[3] ^= 1;
  EXPECT_THROW(open_unblinding(flipped, 4, key), Error);
  auto moved = decoded;
  moved.records[0].layer_index = 5;
  EXPECT_THROW(open_unblinding(moved, 5, key), Error);
  auto replayed = decoded;
  replayed.request_id = 13;
  try {
    open_unblinding(replayed, 4, key);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuthFailure);
  }
  EXPECT_THROW(open_unblinding(decoded, 4, storage_key_from_u64(98)), Error);
  EXPECT_THROW(open_unblinding(decoded, 7, key), Error);

  auto bytes = encode_blob(blob);
  bytes[0] = 'X';
  EXPECT_THROW(decode_blob(bytes), Error);
  auto shortened = encode_blob(blob);
  shortened.pop_back();
  EXPECT_THROW(decode_blob(shortened), Error);
}

std::uint64_t expected_blinded(const ModelGraph& g, const PartitionPlan& plan, bool outputs) {
  std::uint64_t total = 0;
  for (int i = 1; i <= g.size(); ++i) {
    if (plan.route(g, i) != Placement::kBlinded) continue;
    const auto& l = g.layer(i);
    std::uint64_t n = 1;
    for (auto d : outputs ? l.output_shape : l.input_shape) n *= d;
    total += 4 * n;
  }
  return total;
}

TEST(Blinding, ByteAccountingMatchesLayerShapes) {
  const auto g = parse_model_config(vgg_config(16));
  const auto slalom = make_plan(ExecutionMode::slalom(), g);
  const auto origami = make_plan(ExecutionMode::origami(6), g);
  const auto ts = simulate_trace(g, slalom);
  const auto to = simulate_trace(g, origami);
  const auto bs = blinded_bytes_accounting(ts);
  const auto bo = blinded_bytes_accounting(to);
  EXPECT_EQ(bs.blinded, expected_blinded(g, slalom, false));
  EXPECT_EQ(bs.unblinded, expected_blinded(g, slalom, true));
  EXPECT_EQ(bo.blinded, expected_blinded(g, origami, false));
  EXPECT_EQ(bo.unblinded, expected_blinded(g, origami, true));
  EXPECT_LT(bo.total(), bs.total());
  EXPECT_EQ(blinded_bytes_accounting(simulate_trace(g, make_plan(ExecutionMode::baseline2(), g))).total(), 0u);
}

}  // namespace
}  // namespace origami
