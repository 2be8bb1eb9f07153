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

#include <array>
#include <cstdint>
#include <vector>

#include "origami/tensor.hpp"

namespace origami {

class EnclaveState;

using InputKey = std::array<std::uint8_t, 32>;
using InputNonce = std::array<std::uint8_t, 24>;

InputKey input_key_from_u64(std::uint64_t value);

inline constexpr std::uint64_t kInputPlainBytesPerElement = 8;  // float64
inline constexpr std::uint64_t kInputOverheadBytes = 24 + 16;  // nonce + tag

// Bytes that cross into the enclave for an encrypted input of `shape`.
inline std::uint64_t encrypted_input_bytes(const Shape& shape) {
  const auto n = element_count(shape);
  return n == 0 ? 0 : n * kInputPlainBytesPerElement + kInputOverheadBytes;
}

// XChaCha20-Poly1305 with a detached tag. The shape is authenticated as
// associated data.
struct EncryptedInput {
  Shape shape;
  InputNonce nonce{};
  std::array<std::uint8_t, 16> tag{};
  std::vector<std::uint8_t> ciphertext;

  std::uint64_t wire_bytes() const {
    return ciphertext.size() + nonce.size() + tag.size();
  }
};

// Random nonce.
EncryptedInput encrypt_input(const FloatTensor& image, const InputKey& key);
EncryptedInput encrypt_input(const FloatTensor& image, const InputKey& key,
                             const InputNonce& nonce);

// Requires a live enclave (kNotInEnclave otherwise). Returns the quantized
// image with a leading batch dimension of 1.
QuantizedTensor decrypt_input(const EnclaveState& enclave,
                              const EncryptedInput& input, const InputKey& key,
                              const FieldParams& field);

}  // namespace origami
