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

#include <gtest/gtest.h>

#include "origami/cost_model.hpp"
#include "origami/error.hpp"

namespace origami {
namespace {

TEST(CostModel, DefaultsAreValidAndCalibrated) {
  const CostModel c;
  c.validate();
  EXPECT_NEAR(c.blind_ms_per_byte * 6.0 * kMiB, 4.0, 1e-12);
  EXPECT_NEAR(c.copy_in_ms_per_byte * 6.0 * kMiB, 4.0, 1e-12);
  EXPECT_LE(c.untrusted_mac_ms, c.enclave_mac_ms);
  CostModel::cpu_worker().validate();
  EXPECT_GT(CostModel::cpu_worker().untrusted_mac_ms, CostModel::gpu_worker().untrusted_mac_ms);
}

TEST(CostModel, ValidateRejectsNegativeAndInvertedCoefficients) {
  CostModel neg;
  neg.page_encrypt_ms = -1;
  EXPECT_THROW(neg.validate(), Error);
  CostModel inverted;
  inverted.untrusted_mac_ms = inverted.enclave_mac_ms * 2;
  EXPECT_THROW(inverted.validate(), Error);
  EnclaveConfig e;
  e.page_size = 0;
  EXPECT_THROW(e.validate(), Error);
  EnclaveConfig big;
  big.base_bytes = big.epc_limit_bytes + 1;
  EXPECT_THROW(big.validate(), Error);
}

TEST(CostModel, JsonRoundTripAndOverrides) {
  SimConfig cfg;
  cfg.cost.enclave_mac_ms = 1e-7;
  cfg.enclave.swap = SwapMode::kPermissive;
  cfg.policy = LoadPolicy::kPreload;
  const auto back = parse_sim_config(sim_config_to_json(cfg));
  EXPECT_EQ(back.cost.enclave_mac_ms, 1e-7);
  EXPECT_EQ(back.enclave.swap, SwapMode::kPermissive);
  EXPECT_EQ(back.policy, LoadPolicy::kPreload);
  const auto partial = parse_sim_config(
      R"({"format":"origami-cost","version":1,"cost":{"untrusted_mac_ms":7.8e-9}})");
  EXPECT_EQ(partial.cost.untrusted_mac_ms, 7.8e-9);
  EXPECT_EQ(partial.cost.enclave_mac_ms, CostModel{}.enclave_mac_ms);
}

TEST(CostModel, JsonErrors) {
  for (const char* bad : {"[]", "{", R"({"format":"other","version":1})",
                          R"({"format":"origami-cost","version":2})",
                          R"({"format":"origami-cost","version":1,"cost":{"warp":1}})",
                          R"({"format":"origami-cost","version":1,"enclave":{"swap":"maybe"}})",
                          R"({"format":"origami-cost","version":1,"policy":"eager"})"}) {
    try {
      parse_sim_config(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
    }
  }
  EXPECT_THROW(parse_sim_config(R"({"format":"origami-cost","version":1,"cost":{"page_encrypt_ms":-2}})"),
               Error);
}

TEST(CostModel, LoadPolicyNames) {
  EXPECT_EQ(parse_load_policy(load_policy_name(LoadPolicy::kLazy)), LoadPolicy::kLazy);
  EXPECT_EQ(parse_load_policy(load_policy_name(LoadPolicy::kPreload)), LoadPolicy::kPreload);
  EXPECT_THROW(parse_load_policy("sometimes"), Error);
}

}  // namespace
}  // namespace origami
