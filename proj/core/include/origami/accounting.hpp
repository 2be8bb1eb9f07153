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

#include <string>
#include <string_view>
#include <vector>

#include "origami/trace.hpp"

namespace origami {

struct BreakdownRow {
  int index = 0;
  std::string name;
  std::string kind;
  Placement placement = Placement::kEnclave;
  double compute_ms = 0;
  double copy_ms = 0;  // boundary copies and parameter loads
  double blind_ms = 0;
  double total_ms = 0;
  double share = 0;  // of the request total, in [0, 1]
};

struct RuntimeBreakdown {
  std::vector<BreakdownRow> rows;
  double total_ms = 0;
  double compute_share = 0;
  double copy_share = 0;
  double blind_share = 0;

  // Share of the total spent in layers of `kind` ("conv", "dense", ...).
  double kind_share(std::string_view kind) const;
  // Fraction of the time in layers of `kind` that is data movement.
  double movement_fraction(std::string_view kind) const;
};

RuntimeBreakdown runtime_breakdown(const InferenceTrace& trace);

}  // namespace origami
