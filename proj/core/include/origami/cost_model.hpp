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

namespace origami {

inline constexpr std::uint64_t kMiB = 1024 * 1024;

// Simulated costs in ms-equivalent units.
struct CostModel {
  double copy_in_ms_per_byte = 4.0 / (6.0 * kMiB);
  double copy_out_ms_per_byte = 4.0 / (6.0 * kMiB);
  double page_encrypt_ms = 0.007;  // per page at creation
  double enclave_mac_ms = 6e-8;
  double untrusted_mac_ms = 4.4e-10;
  double blind_ms_per_byte = 4.0 / (6.0 * kMiB);  // blind or unblind
  double enclave_param_ms_per_byte = 4.0 / (6.0 * kMiB);
  double enclave_elem_ms = 1.2e-6;
  double untrusted_elem_ms = 1e-9;
  double base_create_ms = 1.0;

  // All coefficients >= 0 and untrusted_mac_ms <= enclave_mac_ms.
  void validate() const;

  static CostModel gpu_worker() { return {}; }
  static CostModel cpu_worker();
};

enum class LoadPolicy { kPreload, kLazy };
enum class SwapMode { kStrict, kPermissive };

std::string_view load_policy_name(LoadPolicy p);
LoadPolicy parse_load_policy(std::string_view s);

struct EnclaveConfig {
  std::uint64_t epc_limit_bytes = 128 * kMiB;
  std::uint64_t page_size = 4096;
  std::uint64_t base_bytes = 7 * kMiB / 2;  // runtime, code, stack, heap
  std::uint64_t lazy_threshold_bytes = 8 * kMiB;
  std::uint64_t param_bytes_per_element = 4;
  SwapMode swap = SwapMode::kStrict;
  double swap_penalty = 10.0;

  void validate() const;
};

struct SimConfig {
  CostModel cost;
  EnclaveConfig enclave;
  LoadPolicy policy = LoadPolicy::kLazy;
};

// JSON document:
//   {"format": "origami-cost", "version": 1,
//    "cost": {...CostModel fields...},
//    "enclave": {...EnclaveConfig fields, "swap": "strict"|"permissive"},
//    "policy": "lazy"|"preload"}
// Omitted fields keep their defaults; unknown fields are rejected.
SimConfig parse_sim_config(std::string_view json_text);
std::string sim_config_to_json(const SimConfig& config);

}  // namespace origami
