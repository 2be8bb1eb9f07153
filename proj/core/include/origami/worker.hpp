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

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "origami/error.hpp"
#include "origami/plan.hpp"

namespace origami {

enum class WorkerOp : std::uint8_t {
  kLinear = 1,   // bias-free linear part of one layer
  kRunFrom = 2,  // layers [index, L] in the clear, returns probabilities
};

struct WorkerRequest {
  std::uint64_t request_id = 0;
  int layer_index = 0;
  WorkerOp op = WorkerOp::kLinear;
  bool blinded = false;
  QuantizedTensor tensor;
};

struct WorkerResponse {
  std::uint64_t request_id = 0;
  int layer_index = 0;
  QuantizedTensor tensor;     // kLinear
  FloatTensor probabilities;  // kRunFrom
};

// Length-prefixed frames: u32 body length, then
//   request:  u64 request_id u32 layer u8 op u8 flags tensor
//   response: u64 request_id u32 layer u8 kind (0 tensor, 1 probabilities) body
// tensor: u8 rank u32[rank] dims i64 scale u32 modulus u32[n] residues
// probabilities: u8 rank u32[rank] dims f64[n]
std::vector<std::uint8_t> encode_request(const WorkerRequest& r);
WorkerRequest decode_request(std::span<const std::uint8_t> frame);
std::vector<std::uint8_t> encode_response(const WorkerResponse& r);
std::vector<std::uint8_t> encode_error(std::uint64_t request_id, int layer_index,
                                       const Error& error);
// Error frames are rethrown with their original code.
WorkerResponse decode_response(std::span<const std::uint8_t> frame);

struct WorkerLogEntry {
  std::uint64_t request_id = 0;
  int layer_index = 0;
  WorkerOp op = WorkerOp::kLinear;
  bool blinded = false;
  std::vector<std::uint32_t> payload;
};

// Untrusted side. Holds the model weights and evaluates requests with the
// same kernels the enclave uses.
class UntrustedWorker {
 public:
  explicit UntrustedWorker(const Model& model) : model_(model) {}

  // Routing assertions for one plan: kLinear only on blinded tensors of
  // blinded layers, kRunFrom only at partition + 1. Violations throw
  // kPrivacyViolation.
  void guard(const PartitionPlan& plan) { guard_ = plan; }
  void record_payloads(bool on) { logging_ = on; }

  WorkerResponse handle(const WorkerRequest& request);

  std::vector<WorkerLogEntry> log() const;
  std::uint64_t requests_served() const;

 private:
  const Model& model_;
  std::optional<PartitionPlan> guard_;
  bool logging_ = false;
  mutable std::mutex mu_;
  std::vector<WorkerLogEntry> log_;
  std::uint64_t served_ = 0;
};

class WorkerTransport {
 public:
  virtual ~WorkerTransport() = default;
  virtual WorkerResponse call(const WorkerRequest& request) = 0;
  std::uint64_t bytes_sent() const { return sent_; }
  std::uint64_t bytes_received() const { return received_; }

 protected:
  std::uint64_t sent_ = 0;
  std::uint64_t received_ = 0;
};

// Direct call; byte counters use the frame sizes the socket transport would
// send.
class InProcessTransport : public WorkerTransport {
 public:
  explicit InProcessTransport(UntrustedWorker& worker) : worker_(worker) {}
  WorkerResponse call(const WorkerRequest& request) override;

 private:
  UntrustedWorker& worker_;
};

// Serves one worker on 127.0.0.1 from a background thread.
class LoopbackServer {
 public:
  explicit LoopbackServer(UntrustedWorker& worker);
  ~LoopbackServer();
  LoopbackServer(const LoopbackServer&) = delete;
  LoopbackServer& operator=(const LoopbackServer&) = delete;

  std::uint16_t port() const { return port_; }

 private:
  void serve();

  UntrustedWorker& worker_;
  int listen_fd_ = -1;
  std::atomic<int> conn_fd_{-1};
  std::uint16_t port_ = 0;
  std::thread thread_;
};

class SocketTransport : public WorkerTransport {
 public:
  explicit SocketTransport(std::uint16_t port);
  ~SocketTransport() override;
  SocketTransport(const SocketTransport&) = delete;
  SocketTransport& operator=(const SocketTransport&) = delete;

  WorkerResponse call(const WorkerRequest& request) override;

 private:
  int fd_ = -1;
};

}  // namespace origami
