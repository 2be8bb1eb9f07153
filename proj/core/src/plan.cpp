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

#include "origami/plan.hpp"

#include <charconv>

#include "origami/error.hpp"

namespace origami {

std::string mode_name(const ExecutionMode& mode) {
  switch (mode.kind) {
    case ModeKind::kBaseline2: return "baseline2";
    case ModeKind::kSplit: return "split/" + std::to_string(mode.layer);
    case ModeKind::kSlalomPrivacy: return "slalom";
    case ModeKind::kOrigami: return "origami/" + std::to_string(mode.layer);
    case ModeKind::kUntrustedOnly: return "untrusted";
  }
  return "?";
}

ExecutionMode parse_mode(std::string_view text) {
  auto with_layer = [&](std::string_view prefix, ModeKind kind) -> std::optional<ExecutionMode> {
    if (!text.starts_with(prefix)) return std::nullopt;
    auto num = text.substr(prefix.size());
    int v = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc() || ptr != num.data() + num.size() || v < 1) {
      fail(ErrorCode::kInvalidArgument, "bad layer index in mode '" + std::string(text) + "'");
    }
    return ExecutionMode{kind, v};
  };
  if (text == "baseline2") return ExecutionMode::baseline2();
  if (text == "slalom") return ExecutionMode::slalom();
  if (text == "untrusted") return ExecutionMode::untrusted_only();
  if (auto m = with_layer("split/", ModeKind::kSplit)) return *m;
  if (auto m = with_layer("origami/", ModeKind::kOrigami)) return *m;
  fail(ErrorCode::kInvalidArgument,
       "unknown execution mode '" + std::string(text) +
           "' (expected baseline2, split/<x>, slalom, origami/<p>, untrusted)");
}

std::string_view placement_name(Placement p) {
  switch (p) {
    case Placement::kEnclave: return "enclave";
    case Placement::kBlinded: return "blinded";
    case Placement::kUntrusted: return "untrusted";
  }
  return "?";
}

Placement PartitionPlan::route(const ModelGraph& graph, int index) const {
  const auto& l = graph.layer(index);
  if (!in_tier1(index)) return Placement::kUntrusted;
  if (mode.blinded() && is_linear(l.kind)) return Placement::kBlinded;
  return Placement::kEnclave;
}

void PartitionPlan::validate(const ModelGraph& graph) const {
  const int L = graph.size();
  const auto bad = [&](const std::string& why) {
    fail(ErrorCode::kInvalidArgument,
         "plan " + mode_name(mode) + " with partition " + std::to_string(partition) + ": " + why);
  };
  if (partition < 0 || partition > L) bad("partition outside [0, " + std::to_string(L) + "]");
  switch (mode.kind) {
    case ModeKind::kBaseline2:
    case ModeKind::kSlalomPrivacy:
      if (partition != L) bad("mode requires partition = L");
      break;
    case ModeKind::kUntrustedOnly:
      if (partition != 0) bad("mode requires partition = 0");
      break;
    case ModeKind::kSplit:
    case ModeKind::kOrigami:
      if (partition < 1 || partition != mode.layer) bad("partition must equal the mode's layer (>= 1)");
      break;
  }
}

PartitionPlan make_plan(const ExecutionMode& mode, const ModelGraph& graph) {
  const int L = graph.size();
  switch (mode.kind) {
    case ModeKind::kBaseline2:
      return {L, mode};
    case ModeKind::kSlalomPrivacy:
      return {L, mode};
    case ModeKind::kUntrustedOnly:
      return {0, mode};
    case ModeKind::kSplit:
    case ModeKind::kOrigami:
      if (mode.layer < 1 || mode.layer > L) {
        fail(ErrorCode::kInvalidArgument,
             mode_name(mode) + ": partition layer outside [1, " + std::to_string(L) + "]");
      }
      return {mode.layer, mode};
  }
  fail(ErrorCode::kInvalidArgument, "unknown execution mode");
}

}  // namespace origami
