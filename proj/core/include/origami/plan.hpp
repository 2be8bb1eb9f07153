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

#include "origami/model.hpp"

namespace origami {

enum class ModeKind { kBaseline2, kSplit, kSlalomPrivacy, kOrigami, kUntrustedOnly };

struct ExecutionMode {
  ModeKind kind = ModeKind::kBaseline2;
  int layer = 0;  // Split(x) / Origami(p)

  static ExecutionMode baseline2() { return {ModeKind::kBaseline2, 0}; }
  static ExecutionMode split(int x) { return {ModeKind::kSplit, x}; }
  static ExecutionMode slalom() { return {ModeKind::kSlalomPrivacy, 0}; }
  static ExecutionMode origami(int p) { return {ModeKind::kOrigami, p}; }
  static ExecutionMode untrusted_only() { return {ModeKind::kUntrustedOnly, 0}; }

  bool blinded() const {
    return kind == ModeKind::kSlalomPrivacy || kind == ModeKind::kOrigami;
  }

  friend bool operator==(const ExecutionMode&, const ExecutionMode&) = default;
};

// "baseline2", "split/6", "slalom", "origami/6", "untrusted".
std::string mode_name(const ExecutionMode& mode);
ExecutionMode parse_mode(std::string_view text);

enum class Placement {
  kEnclave,    // whole layer inside the enclave
  kBlinded,    // linear part offloaded on blinded data, rest in the enclave
  kUntrusted,  // whole layer on the untrusted worker in the clear
};

std::string_view placement_name(Placement p);

// Tier 1 = layers 1..partition, tier 2 = partition+1..L.
struct PartitionPlan {
  int partition = 0;
  ExecutionMode mode;

  Placement route(const ModelGraph& graph, int index) const;
  bool in_tier1(int index) const { return index <= partition; }

  // 0 <= partition <= L, Baseline2/SlalomPrivacy need L, UntrustedOnly
  // needs 0, Split/Origami need their own layer index.
  void validate(const ModelGraph& graph) const;
};

// Validates the mode against the model and derives the partition index:
// Baseline2 and SlalomPrivacy -> L, UntrustedOnly -> 0.
PartitionPlan make_plan(const ExecutionMode& mode, const ModelGraph& graph);

}  // namespace origami
