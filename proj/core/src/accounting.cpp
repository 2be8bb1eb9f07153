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

#include "origami/accounting.hpp"

namespace origami {

RuntimeBreakdown runtime_breakdown(const InferenceTrace& trace) {
  RuntimeBreakdown b;
  double compute = 0, copy = 0, blind = 0;
  for (const auto& r : trace.layers) {
    BreakdownRow row;
    row.index = r.index;
    row.name = r.name;
    row.kind = r.kind;
    row.placement = r.placement;
    row.compute_ms = r.compute_ms();
    row.copy_ms = r.movement_ms();
    row.blind_ms = r.blind_ms;
    row.total_ms = r.total_ms();
    compute += row.compute_ms;
    copy += row.copy_ms;
    blind += row.blind_ms;
    b.rows.push_back(std::move(row));
  }
  b.total_ms = compute + copy + blind;
  if (b.total_ms > 0) {
    for (auto& row : b.rows) row.share = row.total_ms / b.total_ms;
    b.compute_share = compute / b.total_ms;
    b.copy_share = copy / b.total_ms;
    b.blind_share = blind / b.total_ms;
  }
  return b;
}

double RuntimeBreakdown::kind_share(std::string_view kind) const {
  double s = 0;
  for (const auto& r : rows) {
    if (r.kind == kind) s += r.share;
  }
  return s;
}

double RuntimeBreakdown::movement_fraction(std::string_view kind) const {
  double moved = 0, total = 0;
  for (const auto& r : rows) {
    if (r.kind != kind) continue;
    moved += r.copy_ms;
    total += r.total_ms;
  }
  return total > 0 ? moved / total : 0.0;
}

}  // namespace origami
