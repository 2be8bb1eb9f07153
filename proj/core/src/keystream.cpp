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

#include "origami/keystream.hpp"

#include <sodium.h>

#include <bit>
#include <vector>

#include "origami/error.hpp"

namespace origami {
namespace {

constexpr std::size_t kChunkWords = 1024;

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) fail(ErrorCode::kInvalidArgument, "libsodium initialisation failed");
}

}  // namespace

StreamSeed seed_from_u64(std::uint64_t value) {
  StreamSeed s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return s;
}

BlindingStream::BlindingStream(const StreamSeed& seed, std::uint32_t modulus,
                               std::uint64_t counter)
    : seed_(seed), modulus_(modulus), counter_(counter) {
  if (modulus < 2) fail(ErrorCode::kInvalidArgument, "stream modulus must be >= 2");
  ensure_sodium();
}

std::uint64_t BlindingStream::namespaced(std::uint64_t request_id, int layer_index) {
  if (layer_index < 0 || layer_index >= (1 << 20)) {
    fail(ErrorCode::kInvalidArgument, "layer index out of counter namespace");
  }
  if (request_id >= (std::uint64_t{1} << 44)) {
    fail(ErrorCode::kInvalidArgument, "request id out of counter namespace");
  }
  return (request_id << 20) | static_cast<std::uint64_t>(layer_index);
}

void BlindingStream::fill(std::span<std::uint32_t> out) {
  if (!used_.insert(counter_).second) {
    fail(ErrorCode::kFactorReuse,
         "blinding counter " + std::to_string(counter_) + " already used");
  }
  std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  for (std::size_t i = 0; i < nonce.size(); ++i) {
    nonce[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  }
  const std::uint32_t mask = std::bit_ceil(modulus_) - 1;
  std::vector<std::uint8_t> zeros(kChunkWords * 4, 0);
  std::vector<std::uint8_t> block(kChunkWords * 4);
  std::uint64_t block_index = 0;
  std::size_t filled = 0;
  while (filled < out.size()) {
    crypto_stream_chacha20_xor_ic(block.data(), zeros.data(), block.size(),
                                  nonce.data(), block_index, seed_.data());
    block_index += block.size() / 64;
    for (std::size_t w = 0; w < kChunkWords && filled < out.size(); ++w) {
      const std::uint32_t word = static_cast<std::uint32_t>(block[4 * w]) |
                                 static_cast<std::uint32_t>(block[4 * w + 1]) << 8 |
                                 static_cast<std::uint32_t>(block[4 * w + 2]) << 16 |
                                 static_cast<std::uint32_t>(block[4 * w + 3]) << 24;
      const std::uint32_t v = word & mask;
      if (v < modulus_) out[filled++] = v;
    }
  }
  ++counter_;
}

QuantizedTensor gen_factors(BlindingStream& stream, const Shape& shape,
                            std::int64_t scale) {
  if (shape.empty() || element_count(shape) == 0) {
    fail(ErrorCode::kInvalidArgument, "gen_factors needs a nonempty shape");
  }
  std::vector<std::uint32_t> data(element_count(shape));
  stream.fill(data);
  return QuantizedTensor(shape, std::move(data), scale, stream.modulus());
}

}  // namespace origami
