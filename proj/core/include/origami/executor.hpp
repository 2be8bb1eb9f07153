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
#include <unordered_map>

#include "origami/blinding.hpp"
#include "origami/enclave.hpp"
#include "origami/keystream.hpp"
#include "origami/secure_input.hpp"
#include "origami/trace.hpp"
#include "origami/worker.hpp"

namespace origami {

struct SessionKeys {
  InputKey input{};
  StreamSeed stream{};
  StorageKey storage{};

  static SessionKeys from_seed(std::uint64_t seed);
};

// Offline step: blinding factors for every blinded layer of the request,
// their images under each layer, sealed for storage outside the enclave.
UnblindingBlob precompute_request(const Model& model, const PartitionPlan& plan,
                                  const SessionKeys& keys, std::uint64_t request_id);

struct InferenceResult {
  FloatTensor probabilities;
  InferenceTrace trace;
};

// One enclave plus one worker connection. Requests are served sequentially.
class InferenceSession {
 public:
  InferenceSession(const Model& model, const PartitionPlan& plan,
                   const SimConfig& config, WorkerTransport& worker,
                   const SessionKeys& keys);

  const PartitionPlan& plan() const { return plan_; }
  EnclaveState& enclave() { return enclave_; }
  const EnclaveState& enclave() const { return enclave_; }

  void prepare(std::uint64_t request_id);
  InferenceResult run(std::uint64_t request_id, const EncryptedInput& input);

  // Rebuilds the enclave after a power event; returns the recovery cost.
  double recover();

 private:
  const Model& model_;
  PartitionPlan plan_;
  SimConfig config_;
  WorkerTransport& worker_;
  SessionKeys keys_;
  EnclaveState enclave_;
  BlindingStream stream_;
  std::unordered_map<std::uint64_t, UnblindingBlob> prepared_;
};

// Builds an in-process worker and session for a single request.
InferenceResult run_inference(const Model& model, const PartitionPlan& plan,
                              const EncryptedInput& input, const SessionKeys& keys,
                              const SimConfig& config = {},
                              std::uint64_t request_id = 1);

// Trace the executor would record, computed without tensors.
InferenceTrace simulate_trace(const ModelGraph& graph, const PartitionPlan& plan,
                              const SimConfig& config = {},
                              std::uint64_t request_id = 0);

}  // namespace origami
