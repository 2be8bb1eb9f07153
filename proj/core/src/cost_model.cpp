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

#include "origami/cost_model.hpp"

#include <functional>
#include <map>

#include "json.hpp"
#include "origami/error.hpp"

namespace origami {
namespace {

using nlohmann::ordered_json;

template <typename T>
using FieldMap = std::map<std::string, std::function<void(T&, const ordered_json&)>>;

const FieldMap<CostModel>& cost_fields() {
  static const FieldMap<CostModel> m = {
      {"copy_in_ms_per_byte", [](CostModel& c, const ordered_json& v) { c.copy_in_ms_per_byte = v.get<double>(); }},
      {"copy_out_ms_per_byte", [](CostModel& c, const ordered_json& v) { c.copy_out_ms_per_byte = v.get<double>(); }},
      {"page_encrypt_ms", [](CostModel& c, const ordered_json& v) { c.page_encrypt_ms = v.get<double>(); }},
      {"enclave_mac_ms", [](CostModel& c, const ordered_json& v) { c.enclave_mac_ms = v.get<double>(); }},
      {"untrusted_mac_ms", [](CostModel& c, const ordered_json& v) { c.untrusted_mac_ms = v.get<double>(); }},
      {"blind_ms_per_byte", [](CostModel& c, const ordered_json& v) { c.blind_ms_per_byte = v.get<double>(); }},
      {"enclave_param_ms_per_byte", [](CostModel& c, const ordered_json& v) { c.enclave_param_ms_per_byte = v.get<double>(); }},
      {"enclave_elem_ms", [](CostModel& c, const ordered_json& v) { c.enclave_elem_ms = v.get<double>(); }},
      {"untrusted_elem_ms", [](CostModel& c, const ordered_json& v) { c.untrusted_elem_ms = v.get<double>(); }},
      {"base_create_ms", [](CostModel& c, const ordered_json& v) { c.base_create_ms = v.get<double>(); }},
  };
  return m;
}

const FieldMap<EnclaveConfig>& enclave_fields() {
  static const FieldMap<EnclaveConfig> m = {
      {"epc_limit_bytes", [](EnclaveConfig& c, const ordered_json& v) { c.epc_limit_bytes = v.get<std::uint64_t>(); }},
      {"page_size", [](EnclaveConfig& c, const ordered_json& v) { c.page_size = v.get<std::uint64_t>(); }},
      {"base_bytes", [](EnclaveConfig& c, const ordered_json& v) { c.base_bytes = v.get<std::uint64_t>(); }},
      {"lazy_threshold_bytes", [](EnclaveConfig& c, const ordered_json& v) { c.lazy_threshold_bytes = v.get<std::uint64_t>(); }},
      {"param_bytes_per_element", [](EnclaveConfig& c, const ordered_json& v) { c.param_bytes_per_element = v.get<std::uint64_t>(); }},
      {"swap", [](EnclaveConfig& c, const ordered_json& v) {
         const auto s = v.get<std::string>();
         if (s == "strict") c.swap = SwapMode::kStrict;
         else if (s == "permissive") c.swap = SwapMode::kPermissive;
         else fail(ErrorCode::kParse, "swap must be 'strict' or 'permissive', got '" + s + "'");
       }},
      {"swap_penalty", [](EnclaveConfig& c, const ordered_json& v) { c.swap_penalty = v.get<double>(); }},
  };
  return m;
}

template <typename T>
void apply(T& target, const ordered_json& obj, const FieldMap<T>& fields, const std::string& section) {
  if (!obj.is_object()) fail(ErrorCode::kParse, "cost config: '" + section + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) fail(ErrorCode::kParse, "cost config: unknown field " + section + "." + key);
    it->second(target, value);
  }
}

}  // namespace

void CostModel::validate() const {
  const double all[] = {copy_in_ms_per_byte, copy_out_ms_per_byte, page_encrypt_ms,
                        enclave_mac_ms,      untrusted_mac_ms,     blind_ms_per_byte,
                        enclave_param_ms_per_byte, enclave_elem_ms, untrusted_elem_ms,
                        base_create_ms};
  for (double v : all) {
    if (!(v >= 0)) fail(ErrorCode::kInvalidArgument, "cost coefficients must be >= 0");
  }
  if (untrusted_mac_ms > enclave_mac_ms) {
    fail(ErrorCode::kInvalidArgument, "untrusted per-MAC cost exceeds enclave per-MAC cost");
  }
}

CostModel CostModel::cpu_worker() {
  CostModel c;
  c.untrusted_mac_ms = 7.8e-9;
  c.untrusted_elem_ms = 2e-8;
  return c;
}

std::string_view load_policy_name(LoadPolicy p) {
  return p == LoadPolicy::kLazy ? "lazy" : "preload";
}

LoadPolicy parse_load_policy(std::string_view s) {
  if (s == "lazy") return LoadPolicy::kLazy;
  if (s == "preload") return LoadPolicy::kPreload;
  fail(ErrorCode::kParse, "load policy must be 'lazy' or 'preload', got '" + std::string(s) + "'");
}

void EnclaveConfig::validate() const {
  if (page_size == 0) fail(ErrorCode::kInvalidArgument, "page size must be positive");
  if (param_bytes_per_element == 0) {
    fail(ErrorCode::kInvalidArgument, "parameter storage width must be positive");
  }
  if (!(swap_penalty >= 1.0)) fail(ErrorCode::kInvalidArgument, "swap penalty must be >= 1");
  if (base_bytes > epc_limit_bytes) {
    fail(ErrorCode::kInvalidArgument, "base enclave size exceeds the EPC limit");
  }
}

SimConfig parse_sim_config(std::string_view json_text) {
  SimConfig cfg;
  try {
    const auto doc = ordered_json::parse(json_text);
    if (!doc.is_object()) fail(ErrorCode::kParse, "cost config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "format") {
        if (value.get<std::string>() != "origami-cost") fail(ErrorCode::kParse, "not an origami cost config");
      } else if (key == "version") {
        if (value.get<int>() != 1) fail(ErrorCode::kParse, "unsupported cost config version");
      } else if (key == "cost") {
        apply(cfg.cost, value, cost_fields(), "cost");
      } else if (key == "enclave") {
        apply(cfg.enclave, value, enclave_fields(), "enclave");
      } else if (key == "policy") {
        cfg.policy = parse_load_policy(value.get<std::string>());
      } else {
        fail(ErrorCode::kParse, "cost config: unknown field " + key);
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::kParse, std::string("cost config: ") + e.what());
  }
  cfg.cost.validate();
  cfg.enclave.validate();
  return cfg;
}

std::string sim_config_to_json(const SimConfig& c) {
  const auto& k = c.cost;
  const auto& e = c.enclave;
  ordered_json doc = {
      {"format", "origami-cost"},
      {"version", 1},
      {"cost",
       {{"copy_in_ms_per_byte", k.copy_in_ms_per_byte},
        {"copy_out_ms_per_byte", k.copy_out_ms_per_byte},
        {"page_encrypt_ms", k.page_encrypt_ms},
        {"enclave_mac_ms", k.enclave_mac_ms},
        {"untrusted_mac_ms", k.untrusted_mac_ms},
        {"blind_ms_per_byte", k.blind_ms_per_byte},
        {"enclave_param_ms_per_byte", k.enclave_param_ms_per_byte},
        {"enclave_elem_ms", k.enclave_elem_ms},
        {"untrusted_elem_ms", k.untrusted_elem_ms},
        {"base_create_ms", k.base_create_ms}}},
      {"enclave",
       {{"epc_limit_bytes", e.epc_limit_bytes},
        {"page_size", e.page_size},
        {"base_bytes", e.base_bytes},
        {"lazy_threshold_bytes", e.lazy_threshold_bytes},
        {"param_bytes_per_element", e.param_bytes_per_element},
        {"swap", e.swap == SwapMode::kStrict ? "strict" : "permissive"},
        {"swap_penalty", e.swap_penalty}}},
      {"policy", std::string(load_policy_name(c.policy))}};
  return doc.dump(2) + "\n";
}

}  // namespace origami
