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

#include "origami/error.hpp"
#include "origami/field.hpp"

namespace origami {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kRangeOverflow: return "range-overflow";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kMissingWeights: return "missing-weights";
    case ErrorCode::kUnknownLayerKind: return "unknown-layer-kind";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kEpcOverflow: return "epc-overflow";
    case ErrorCode::kEnclaveDestroyed: return "enclave-destroyed";
    case ErrorCode::kNotInEnclave: return "not-in-enclave";
    case ErrorCode::kAuthFailure: return "auth-failure";
    case ErrorCode::kFactorReuse: return "factor-reuse";
    case ErrorCode::kPrivacyViolation: return "privacy-violation";
    case ErrorCode::kWorker: return "worker";
    case ErrorCode::kOracle: return "oracle";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kCorrupt: return "corrupt";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void FieldParams::validate() const {
  if (modulus < 3 || modulus >= (1u << 24) || !is_prime(modulus)) {
    fail(ErrorCode::kInvalidArgument,
         "field modulus must be an odd prime below 2^24, got " +
             std::to_string(modulus));
  }
  if (scale <= 0) {
    fail(ErrorCode::kInvalidArgument,
         "fixed-point scale must be positive, got " + std::to_string(scale));
  }
}

bool FieldParams::no_wrap_guaranteed(std::size_t max_fan_in) const {
  const double bound = 2.0 * static_cast<double>(scale) *
                       static_cast<double>(scale) *
                       static_cast<double>(max_fan_in);
  return static_cast<double>(modulus) > bound;
}

std::int64_t div_round_half_even(std::int64_t value, std::int64_t divisor) {
  std::int64_t q = value / divisor;
  std::int64_t r = value % divisor;
  if (r < 0) {
    // floor semantics
    r += divisor;
    q -= 1;
  }
  const std::int64_t twice = 2 * r;
  if (twice > divisor || (twice == divisor && (q & 1) != 0)) ++q;
  return q;
}

}  // namespace origami
