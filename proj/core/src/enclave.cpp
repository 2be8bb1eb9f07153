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

#include "origami/enclave.hpp"

#include <algorithm>

#include "origami/error.hpp"
#include "origami/secure_input.hpp"

namespace origami {
namespace {

std::uint64_t pages(std::uint64_t bytes, std::uint64_t page) {
  return (bytes + page - 1) / page;
}

std::uint64_t param_bytes(const ModelGraph& g, int i, const EnclaveConfig& c) {
  return layer_params_bytes(g, i, c.param_bytes_per_element) +
         layer_bias_bytes(g, i, c.param_bytes_per_element);
}

bool lazily_loaded(const LayerSpec& l, std::uint64_t bytes, LoadPolicy policy,
                   const EnclaveConfig& c) {
  return policy == LoadPolicy::kLazy && l.kind == LayerKind::kDense &&
         bytes > c.lazy_threshold_bytes;
}

std::string mib(std::uint64_t b) {
  return std::to_string(b) + " B (" + std::to_string(static_cast<double>(b) / kMiB) + " MiB)";
}

}  // namespace

MemoryPlan memory_plan(const PartitionPlan& plan, const ModelGraph& graph,
                       LoadPolicy policy, const EnclaveConfig& config) {
  plan.validate(graph);
  MemoryPlan m;
  m.base_bytes = config.base_bytes;
  const std::uint64_t input_bytes = element_count(graph.input_shape()) * kActivationBytes;
  std::uint64_t largest = input_bytes;
  std::uint64_t largest_lazy = 0;
  for (int i = 1; i <= plan.partition; ++i) {
    const auto& l = graph.layer(i);
    largest = std::max<std::uint64_t>(largest, l.output_elements() * kActivationBytes);
    const auto placement = plan.route(graph, i);
    if (placement == Placement::kEnclave && is_linear(l.kind)) {
      const auto bytes = param_bytes(graph, i, config);
      if (lazily_loaded(l, bytes, policy, config)) {
        m.lazy_layers.push_back(i);
        largest_lazy = std::max(largest_lazy, bytes);
      } else {
        m.preloaded_layers.push_back(i);
        m.resident_param_bytes += bytes;
      }
    } else if (placement == Placement::kBlinded) {
      const auto in = l.input_elements() * kActivationBytes;
      const auto out = (l.output_elements() + l.bias_elements()) * kActivationBytes;
      m.largest_blinded_bytes = std::max({m.largest_blinded_bytes, in, out});
    }
  }
  m.largest_activation_bytes = largest;
  if (!graph.empty()) {
    m.activation_bytes = 2 * std::max(largest, encrypted_input_bytes(graph.input_shape()));
  }
  m.factor_bytes = m.largest_blinded_bytes;
  m.staging_bytes = std::min(config.lazy_threshold_bytes, largest_lazy);
  return m;
}

double fixed_base_cost_ms(const SimConfig& config) {
  return config.cost.base_create_ms +
         config.cost.page_encrypt_ms *
             static_cast<double>(pages(config.enclave.base_bytes, config.enclave.page_size));
}

double creation_cost_ms(const MemoryPlan& layout, const SimConfig& config) {
  const auto& c = config.cost;
  const auto total = layout.total();
  double ms = c.base_create_ms +
              c.page_encrypt_ms * static_cast<double>(pages(total, config.enclave.page_size)) +
              c.copy_in_ms_per_byte * static_cast<double>(layout.resident_param_bytes);
  if (total > config.enclave.epc_limit_bytes) {
    ms += config.enclave.swap_penalty * c.copy_in_ms_per_byte *
          static_cast<double>(total - config.enclave.epc_limit_bytes);
  }
  return ms;
}

EnclaveState create_enclave(const PartitionPlan& plan, const ModelGraph& graph,
                            const SimConfig& config) {
  config.cost.validate();
  config.enclave.validate();
  EnclaveState s;
  s.config_ = config;
  s.layout_ = memory_plan(plan, graph, config.policy, config.enclave);
  const auto total = s.layout_.total();
  if (config.enclave.swap == SwapMode::kStrict && total > config.enclave.epc_limit_bytes) {
    fail(ErrorCode::kEpcOverflow, "enclave for " + mode_name(plan.mode) + " needs " + mib(total) +
                                      " but the EPC limit is " +
                                      mib(config.enclave.epc_limit_bytes));
  }
  s.params_.resize(static_cast<std::size_t>(graph.size()));
  for (int i = 1; i <= graph.size(); ++i) {
    const auto& l = graph.layer(i);
    auto& p = s.params_[static_cast<std::size_t>(i - 1)];
    p.bytes = is_linear(l.kind) ? param_bytes(graph, i, config.enclave) : 0;
    p.lazy = lazily_loaded(l, p.bytes, config.policy, config.enclave);
  }
  for (int i : s.layout_.preloaded_layers) s.params_[static_cast<std::size_t>(i - 1)].resident = true;
  s.param_bytes_ = s.layout_.resident_param_bytes;
  s.creation_ms_ = creation_cost_ms(s.layout_, config);
  s.alive_ = true;
  s.high_water_ = s.resident_bytes();
  s.ledger_.initial_resident = s.resident_bytes();
  return s;
}

void EnclaveState::require_alive(const char* op) const {
  if (!alive_) fail(ErrorCode::kEnclaveDestroyed, std::string(op) + " on a destroyed enclave");
}

bool EnclaveState::params_resident(int layer) const {
  if (layer < 1 || layer > static_cast<int>(params_.size())) return false;
  return params_[static_cast<std::size_t>(layer - 1)].resident;
}

bool EnclaveState::is_lazy(int layer) const {
  if (layer < 1 || layer > static_cast<int>(params_.size())) return false;
  return params_[static_cast<std::size_t>(layer - 1)].lazy;
}

double EnclaveState::after_growth() {
  const auto r = resident_bytes();
  high_water_ = std::max(high_water_, r);
  const auto limit = config_.enclave.epc_limit_bytes;
  if (r <= limit) return 0;
  if (config_.enclave.swap == SwapMode::kStrict) {
    fail(ErrorCode::kEpcOverflow,
         "enclave would hold " + mib(r) + " but the EPC limit is " + mib(limit));
  }
  return config_.enclave.swap_penalty * config_.cost.copy_in_ms_per_byte *
         static_cast<double>(r - limit);
}

double EnclaveState::copy_in(std::uint64_t bytes) {
  require_alive("copy_in");
  working_bytes_ += bytes;
  ledger_.copied_in += bytes;
  const double penalty = bytes ? after_growth() : 0.0;
  return config_.cost.copy_in_ms_per_byte * static_cast<double>(bytes) + penalty;
}

double EnclaveState::copy_out(std::uint64_t bytes) {
  require_alive("copy_out");
  if (bytes > working_bytes_) {
    fail(ErrorCode::kInvalidArgument, "copy_out of " + std::to_string(bytes) +
                                          " B exceeds live working memory");
  }
  working_bytes_ -= bytes;
  ledger_.copied_out += bytes;
  return config_.cost.copy_out_ms_per_byte * static_cast<double>(bytes);
}

void EnclaveState::allocate(std::uint64_t bytes) {
  require_alive("allocate");
  working_bytes_ += bytes;
  ledger_.allocated += bytes;
  after_growth();
}

void EnclaveState::release(std::uint64_t bytes) {
  require_alive("release");
  if (bytes > working_bytes_) {
    fail(ErrorCode::kInvalidArgument, "release of " + std::to_string(bytes) +
                                          " B exceeds live working memory");
  }
  working_bytes_ -= bytes;
  ledger_.released += bytes;
}

ParamLoad EnclaveState::load_params(int layer, bool on_demand) {
  require_alive("load_params");
  if (layer < 1 || layer > static_cast<int>(params_.size())) {
    fail(ErrorCode::kIndexOutOfRange, "load_params: no layer " + std::to_string(layer));
  }
  auto& p = params_[static_cast<std::size_t>(layer - 1)];
  ParamLoad out;
  if (p.bytes == 0 || p.resident) return out;
  if (p.lazy) {
    if (!on_demand) {
      out.deferred = true;
      return out;
    }
    const std::uint64_t chunk = std::max<std::uint64_t>(1, config_.enclave.lazy_threshold_bytes);
    for (std::uint64_t done = 0; done < p.bytes; done += chunk) {
      const auto n = std::min(chunk, p.bytes - done);
      out.cost_ms += copy_in(n);
      release(n);
    }
    out.bytes = p.bytes;
    return out;
  }
  // Non-lazy parameters that were not part of the layout become resident.
  param_bytes_ += p.bytes;
  ledger_.copied_in += p.bytes;
  out.cost_ms = config_.cost.copy_in_ms_per_byte * static_cast<double>(p.bytes) + after_growth();
  out.bytes = p.bytes;
  p.resident = true;
  return out;
}

void EnclaveState::destroy() {
  alive_ = false;
  working_bytes_ = 0;
  param_bytes_ = 0;
}

double copy_across_boundary(EnclaveState& state, std::uint64_t bytes, Direction direction) {
  return direction == Direction::kIn ? state.copy_in(bytes) : state.copy_out(bytes);
}

void power_event(EnclaveState& state) { state.destroy(); }

Recovery recover(const PartitionPlan& plan, const ModelGraph& graph, const SimConfig& config) {
  Recovery r{create_enclave(plan, graph, config), 0.0};
  r.recovery_ms = r.state.creation_cost_ms();
  return r;
}

}  // namespace origami
