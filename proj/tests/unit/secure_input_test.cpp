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
#include "origami/enclave.hpp"
#include "origami/error.hpp"
#include "origami/secure_input.hpp"

namespace origami {
namespace {

class SecureInputTest : public ::testing::Test {
 protected:
  ModelGraph g = parse_model_config(toy_config());
  EnclaveState enclave = create_enclave(make_plan(ExecutionMode::baseline2(), g), g, SimConfig{});
  InputKey key = input_key_from_u64(21);
  std::mt19937_64 rng{22};
};

TEST_F(SecureInputTest, RoundTripQuantizesWithBatchDimension) {
  const auto img = testing::random_image({8, 8, 3}, rng);
  const auto enc = encrypt_input(img, key);
  EXPECT_EQ(enc.wire_bytes(), encrypted_input_bytes({8, 8, 3}));
  EXPECT_EQ(enc.wire_bytes(), 8u * 192 + 40);
  const auto q = decrypt_input(enclave, enc, key, FieldParams{});
  EXPECT_EQ(q.shape(), (Shape{1, 8, 8, 3}));
  const FloatTensor batched_img({1, 8, 8, 3}, std::vector<double>(img.values().begin(), img.values().end()));
  EXPECT_EQ(q, quantize(batched_img, FieldParams{}));
}

TEST_F(SecureInputTest, FreshNoncesAndDeterministicExplicitNonce) {
  const auto img = testing::random_image({2, 2, 1}, rng);
  EXPECT_NE(encrypt_input(img, key).ciphertext, encrypt_input(img, key).ciphertext);
  InputNonce n{};
  n[0] = 9;
  EXPECT_EQ(encrypt_input(img, key, n).ciphertext, encrypt_input(img, key, n).ciphertext);
}

TEST_F(SecureInputTest, TamperingFailsAuthentication) {
  const auto img = testing::random_image({8, 8, 3}, rng);
  const auto enc = encrypt_input(img, key);
  auto code = [&](const EncryptedInput& e, const InputKey& k) {
    try {
      decrypt_input(enclave, e, k, FieldParams{});
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  auto flipped = enc;
  flipped.ciphertext[5] ^= 0x10;
  EXPECT_EQ(code(flipped, key), ErrorCode::kAuthFailure);
  auto tag = enc;
  tag.tag[0] ^= 1;
  EXPECT_EQ(code(tag, key), ErrorCode::kAuthFailure);
  auto reshaped = enc;
  reshaped.shape = {8, 3, 8};
  EXPECT_EQ(code(reshaped, key), ErrorCode::kAuthFailure);
  EXPECT_EQ(code(enc, input_key_from_u64(20)), ErrorCode::kAuthFailure);
}

TEST_F(SecureInputTest, RequiresLiveEnclave) {
  const auto enc = encrypt_input(testing::random_image({8, 8, 3}, rng), key);
  enclave.destroy();
  try {
    decrypt_input(enclave, enc, key, FieldParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInEnclave);
  }
  EXPECT_THROW(encrypt_input(FloatTensor({0}, {}), key), Error);
}

}  // namespace
}  // namespace origami
