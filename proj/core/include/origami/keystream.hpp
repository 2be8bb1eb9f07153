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
#include <unordered_set>

#include "origami/tensor.hpp"

namespace origami {

using StreamSeed = std::array<std::uint8_t, 32>;

StreamSeed seed_from_u64(std::uint64_t value);

// Deterministic field-element generator. Block function is ChaCha20 keyed by
// the seed with the 64-bit counter as nonce; 32-bit words are masked to the
// bit length of p and rejected when >= p. Each counter value may be drawn
// from once per stream object.
class BlindingStream {
 public:
  BlindingStream(const StreamSeed& seed, std::uint32_t modulus,
                 std::uint64_t counter = 0);

  // (request id, layer index) -> counter. Layer indices use the low 20 bits.
  static std::uint64_t namespaced(std::uint64_t request_id, int layer_index);

  std::uint64_t counter() const { return counter_; }
  std::uint32_t modulus() const { return modulus_; }
  void seek(std::uint64_t counter) { counter_ = counter; }
  void seek(std::uint64_t request_id, int layer_index) {
    counter_ = namespaced(request_id, layer_index);
  }

  // Fills `out` from the current counter and advances it by one. Throws
  // kFactorReuse when the counter was already used by this stream.
  void fill(std::span<std::uint32_t> out);

 private:
  StreamSeed seed_;
  std::uint32_t modulus_;
  std::uint64_t counter_;
  std::unordered_set<std::uint64_t> used_;
};

// Uniform tensor over [0, p) tagged with `scale` so it can blind tensors of
// that scale.
QuantizedTensor gen_factors(BlindingStream& stream, const Shape& shape,
                            std::int64_t scale);

}  // namespace origami
