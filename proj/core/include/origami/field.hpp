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

namespace origami {

// 2^24 - 3, the largest prime below 2^24. Centered operands stay below 2^23
// in magnitude, so a 64-bit accumulator absorbs up to 2^16 products without
// intermediate reduction.
inline constexpr std::uint32_t kDefaultModulus = 16777213u;
inline constexpr std::int64_t kDefaultScale = 256;
inline constexpr std::size_t kMaxUnreducedFanIn = std::size_t{1} << 16;

bool is_prime(std::uint64_t n);

struct FieldParams {
  std::uint32_t modulus = kDefaultModulus;
  std::int64_t scale = kDefaultScale;

  // Throws kInvalidArgument unless modulus is an odd prime below 2^24 and
  // scale is positive.
  void validate() const;

  // Conservative no-wraparound condition for honest values with |x|,|w| <= 1.
  bool no_wrap_guaranteed(std::size_t max_fan_in) const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

// Signed interpretation: residues >= p/2 (rounded up) encode negatives.
inline std::int64_t to_signed(std::uint32_t v, std::uint32_t p) {
  return v > p / 2 ? static_cast<std::int64_t>(v) - p
                   : static_cast<std::int64_t>(v);
}

inline std::uint32_t to_field(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;  // a, b < 2^24, no overflow
  return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

// Divides by `divisor` rounding half to even.
std::int64_t div_round_half_even(std::int64_t value, std::int64_t divisor);

}  // namespace origami
