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
#include <vector>

#include "origami/cost_model.hpp"
#include "origami/plan.hpp"

namespace origami {

// Static enclave layout for a plan.
struct MemoryPlan {
  std::uint64_t base_bytes = 0;
  std::uint64_t resident_param_bytes = 0;
  std::uint64_t activation_bytes = 0;  // double buffer
  std::uint64_t factor_bytes = 0;      // blinding / unblinding buffer
  std::uint64_t staging_bytes = 0;     // lazy parameter streaming
  std::uint64_t largest_activation_bytes = 0;
  std::uint64_t largest_blinded_bytes = 0;
  std::vector<int> preloaded_layers;
  std::vector<int> lazy_layers;

  std::uint64_t total() const {
    return base_bytes + resident_param_bytes + activation_bytes + factor_bytes +
           staging_bytes;
  }
};

MemoryPlan memory_plan(const PartitionPlan& plan, const ModelGraph& graph,
                       LoadPolicy policy, const EnclaveConfig& config);

inline std::uint64_t peak_memory(const PartitionPlan& plan, const ModelGraph& graph,
                                 LoadPolicy policy, const EnclaveConfig& config) {
  return memory_plan(plan, graph, policy, config).total();
}

// Creation cost of an enclave holding only the base image.
double fixed_base_cost_ms(const SimConfig& config);

// Cost of building the enclave for `layout`.
double creation_cost_ms(const MemoryPlan& layout, const SimConfig& config);

// Byte flows since creation. Conservation:
// copied_in - copied_out - released + allocated == resident - initial.
struct TransferLedger {
  std::uint64_t copied_in = 0;
  std::uint64_t copied_out = 0;
  std::uint64_t allocated = 0;
  std::uint64_t released = 0;
  std::uint64_t initial_resident = 0;
};

struct ParamLoad {
  double cost_ms = 0;
  std::uint64_t bytes = 0;
  bool deferred = false;
};

enum class Direction { kIn, kOut };

class EnclaveState {
 public:
  bool alive() const { return alive_; }
  const SimConfig& config() const { return config_; }
  const MemoryPlan& layout() const { return layout_; }
  double creation_cost_ms() const { return creation_ms_; }

  std::uint64_t resident_bytes() const {
    return layout_.base_bytes + param_bytes_ + working_bytes_;
  }
  std::uint64_t working_bytes() const { return working_bytes_; }
  std::uint64_t high_water_bytes() const { return high_water_; }
  bool params_resident(int layer) const;
  bool is_lazy(int layer) const;
  const TransferLedger& ledger() const { return ledger_; }

  // Boundary copies; cost is bytes x directional coefficient (plus the
  // swap penalty in permissive mode when over the EPC limit).
  double copy_in(std::uint64_t bytes);
  double copy_out(std::uint64_t bytes);

  // Enclave-internal working memory.
  void allocate(std::uint64_t bytes);
  void release(std::uint64_t bytes);

  ParamLoad load_params(int layer, bool on_demand);

  void destroy();

 private:
  friend EnclaveState create_enclave(const PartitionPlan&, const ModelGraph&,
                                     const SimConfig&);
  EnclaveState() = default;

  void require_alive(const char* op) const;
  double after_growth();

  struct LayerParams {
    std::uint64_t bytes = 0;
    bool lazy = false;
    bool resident = false;
  };

  SimConfig config_;
  MemoryPlan layout_;
  std::vector<LayerParams> params_;
  std::uint64_t param_bytes_ = 0;
  std::uint64_t working_bytes_ = 0;
  std::uint64_t high_water_ = 0;
  double creation_ms_ = 0;
  bool alive_ = false;
  TransferLedger ledger_;
};

// Throws kEpcOverflow in strict mode when the static layout exceeds the EPC.
EnclaveState create_enclave(const PartitionPlan& plan, const ModelGraph& graph,
                            const SimConfig& config);

inline ParamLoad load_params(EnclaveState& state, int layer, bool on_demand) {
  return state.load_params(layer, on_demand);
}

double copy_across_boundary(EnclaveState& state, std::uint64_t bytes,
                            Direction direction);

void power_event(EnclaveState& state);

struct Recovery {
  EnclaveState state;
  double recovery_ms = 0;
};

Recovery recover(const PartitionPlan& plan, const ModelGraph& graph,
                 const SimConfig& config);

}  // namespace origami
