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

#include <stdexcept>
#include <string>
#include <string_view>

namespace origami {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kRangeOverflow,
  kParse,
  kMissingWeights,
  kUnknownLayerKind,
  kIndexOutOfRange,
  kEpcOverflow,
  kEnclaveDestroyed,
  kNotInEnclave,
  kAuthFailure,
  kFactorReuse,
  kPrivacyViolation,
  kWorker,
  kOracle,
  kIo,
  kCorrupt,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (and the CLI exit-code mapping) tell failure classes apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace origami
