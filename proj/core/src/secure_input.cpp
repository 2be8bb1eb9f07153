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

#include "origami/secure_input.hpp"

#include <sodium.h>

#include "bytes.hpp"
#include "origami/enclave.hpp"
#include "origami/error.hpp"

namespace origami {
namespace {

std::vector<std::uint8_t> shape_ad(const Shape& shape) {
  ByteWriter w;
  w.magic("ORGI");
  w.u8(static_cast<std::uint8_t>(shape.size()));
  for (auto d : shape) w.u32(static_cast<std::uint32_t>(d));
  return w.take();
}

void init() {
  if (sodium_init() < 0) fail(ErrorCode::kInvalidArgument, "libsodium unavailable");
}

}  // namespace

InputKey input_key_from_u64(std::uint64_t value) {
  InputKey k{};
  for (int i = 0; i < 8; ++i) k[i] = static_cast<std::uint8_t>(value >> (8 * i));
  k[31] = 0x1;
  return k;
}

EncryptedInput encrypt_input(const FloatTensor& image, const InputKey& key) {
  init();
  InputNonce nonce;
  randombytes_buf(nonce.data(), nonce.size());
  return encrypt_input(image, key, nonce);
}

EncryptedInput encrypt_input(const FloatTensor& image, const InputKey& key,
                             const InputNonce& nonce) {
  init();
  if (image.size() == 0) fail(ErrorCode::kInvalidArgument, "cannot encrypt an empty image");
  ByteWriter plain;
  for (double v : image.values()) plain.f64(v);
  const auto pt = plain.take();
  EncryptedInput out;
  out.shape = image.shape();
  out.nonce = nonce;
  out.ciphertext.resize(pt.size());
  const auto ad = shape_ad(out.shape);
  unsigned long long maclen = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt_detached(
      out.ciphertext.data(), out.tag.data(), &maclen, pt.data(), pt.size(), ad.data(),
      ad.size(), nullptr, nonce.data(), key.data());
  return out;
}

QuantizedTensor decrypt_input(const EnclaveState& enclave,
                              const EncryptedInput& input, const InputKey& key,
                              const FieldParams& field) {
  if (!enclave.alive()) {
    fail(ErrorCode::kNotInEnclave, "input decryption requires a live enclave");
  }
  init();
  const std::size_t n = element_count(input.shape);
  if (n == 0 || input.ciphertext.size() != n * kInputPlainBytesPerElement) {
    fail(ErrorCode::kAuthFailure, "encrypted input length does not match its shape");
  }
  std::vector<std::uint8_t> pt(input.ciphertext.size());
  const auto ad = shape_ad(input.shape);
  if (crypto_aead_xchacha20poly1305_ietf_decrypt_detached(
          pt.data(), nullptr, input.ciphertext.data(), input.ciphertext.size(),
          input.tag.data(), ad.data(), ad.size(), input.nonce.data(), key.data()) != 0) {
    fail(ErrorCode::kAuthFailure, "encrypted input failed authentication");
  }
  ByteReader r(pt, "decrypted input");
  std::vector<double> values(n);
  for (auto& v : values) v = r.f64();
  Shape shape{1};
  shape.insert(shape.end(), input.shape.begin(), input.shape.end());
  return quantize(FloatTensor(std::move(shape), std::move(values)), field);
}

}  // namespace origami
