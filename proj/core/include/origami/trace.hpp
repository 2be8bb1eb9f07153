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
#include <string>
#include <string_view>
#include <vector>

#include "origami/plan.hpp"

namespace origami {

// Costs are in simulated ms-equivalent units.
struct LayerRecord {
  int index = 0;  // layer 1 also carries input ingestion
  std::string name;
  std::string kind;
  Placement placement = Placement::kEnclave;
  double enclave_compute_ms = 0;
  double untrusted_compute_ms = 0;
  double copy_ms = 0;
  double param_load_ms = 0;
  double blind_ms = 0;
  std::uint64_t bytes_blinded = 0;
  std::uint64_t bytes_unblinded = 0;
  std::uint64_t bytes_copied_in = 0;
  std::uint64_t bytes_copied_out = 0;
  std::uint64_t params_loaded_bytes = 0;

  double compute_ms() const { return enclave_compute_ms + untrusted_compute_ms; }
  double movement_ms() const { return copy_ms + param_load_ms; }
  double total_ms() const { return compute_ms() + movement_ms() + blind_ms; }

  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

struct TraceTotals {
  double enclave_compute_ms = 0;
  double untrusted_compute_ms = 0;
  double copy_ms = 0;
  double param_load_ms = 0;
  double blind_ms = 0;
  double total_ms = 0;
  std::uint64_t bytes_blinded = 0;
  std::uint64_t bytes_unblinded = 0;
  std::uint64_t bytes_copied_in = 0;
  std::uint64_t bytes_copied_out = 0;
  std::uint64_t params_loaded_bytes = 0;
};

struct InferenceTrace {
  std::uint64_t request_id = 0;
  std::string model;
  ExecutionMode mode;
  int partition = 0;
  std::uint64_t peak_memory_bytes = 0;  // analytic static size
  std::uint64_t high_water_bytes = 0;   // observed during the request
  double recovery_ms = 0;
  std::vector<LayerRecord> layers;

  TraceTotals totals() const;

  friend bool operator==(const InferenceTrace&, const InferenceTrace&) = default;
};

inline constexpr int kTraceFormatVersion = 1;

std::string trace_to_json(const InferenceTrace& trace);

// `source` names the file in error messages. Rejects malformed documents and
// stored totals that disagree with the per-layer records.
InferenceTrace trace_from_json(std::string_view text, std::string_view source);

}  // namespace origami
