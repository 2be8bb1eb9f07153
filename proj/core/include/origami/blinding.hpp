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
#include <span>
#include <vector>

#include "origami/model.hpp"
#include "origami/trace.hpp"

namespace origami {

// (x + r) mod p. Shapes, moduli and scales must agree.
QuantizedTensor blind(const QuantizedTensor& x, const QuantizedTensor& r);

struct UnblindingRecord {
  int layer_index = 0;
  QuantizedTensor u;                // L(r), no bias
  std::vector<std::uint32_t> bias;  // added after unblinding
  bool encrypted_at_rest = false;
};

// U = L(r) with the same kernel used for honest evaluation.
UnblindingRecord precompute_unblinding(const LayerSpec& layer,
                                       const LayerWeights& weights,
                                       const QuantizedTensor& r);

// (z - U) mod p.
QuantizedTensor unblind(const QuantizedTensor& z, const UnblindingRecord& u);

// Sealed storage for unblinding records kept outside the enclave.
using StorageKey = std::array<std::uint8_t, 32>;

StorageKey storage_key_from_u64(std::uint64_t value);

struct SealedRecord {
  int layer_index = 0;
  Shape shape;
  std::int64_t scale = 1;
  std::uint32_t modulus = kDefaultModulus;
  std::uint32_t bias_count = 0;
  std::vector<std::uint8_t> ciphertext;  // includes the 16-byte tag

  // Bytes the enclave copies in to fetch this record (U plus bias).
  std::uint64_t payload_bytes() const {
    return (element_count(shape) + bias_count) * 4;
  }
};

struct UnblindingBlob {
  std::uint64_t request_id = 0;
  std::vector<SealedRecord> records;

  const SealedRecord& find(int layer_index) const;
};

UnblindingBlob seal_unblinding(std::uint64_t request_id,
                               std::span<const UnblindingRecord> records,
                               const StorageKey& key);

// Decrypts one layer's record. Throws kAuthFailure on tampering.
UnblindingRecord open_unblinding(const UnblindingBlob& blob, int layer_index,
                                 const StorageKey& key);

// File layout (little endian):
//   "ORGU" u32 version=1 u64 request_id u32 layer_count
//   per record: u32 layer_index u8 rank u32[rank] dims i64 scale u32 modulus
//               u32 bias_count u32 ciphertext_length bytes ciphertext
inline constexpr std::uint32_t kBlobVersion = 1;
std::vector<std::uint8_t> encode_blob(const UnblindingBlob& blob);
UnblindingBlob decode_blob(std::span<const std::uint8_t> bytes);

struct BlindedBytes {
  std::uint64_t blinded = 0;
  std::uint64_t unblinded = 0;
  std::uint64_t total() const { return blinded + unblinded; }
};

BlindedBytes blinded_bytes_accounting(const InferenceTrace& trace);

}  // namespace origami
