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

#include "origami/executor.hpp"

#include <sodium.h>

#include <algorithm>
#include <string_view>

#include "origami/error.hpp"
#include "origami/layer_ops.hpp"

namespace origami {
namespace {

template <std::size_t N>
std::array<std::uint8_t, N> derive(std::uint64_t seed, std::string_view label) {
  if (sodium_init() < 0) fail(ErrorCode::kInvalidArgument, "libsodium unavailable");
  std::array<std::uint8_t, 8 + 16> msg{};
  for (int i = 0; i < 8; ++i) msg[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  std::copy_n(label.begin(), std::min<std::size_t>(label.size(), 16), msg.begin() + 8);
  std::array<std::uint8_t, N> out{};
  crypto_generichash(out.data(), out.size(), msg.data(), msg.size(), nullptr, 0);
  return out;
}

// Tensor state of a live request; absent when only costs are simulated.
struct Numerics {
  const Model& model;
  WorkerTransport& worker;
  BlindingStream& stream;
  const UnblindingBlob& blob;
  const SessionKeys& keys;
  const EncryptedInput& input;
  QuantizedTensor x;
  FloatTensor output;
};

InferenceTrace execute(const ModelGraph& g, const PartitionPlan& plan, EnclaveState& enc,
                       std::uint64_t request_id, Numerics* num) {
  if (!enc.alive()) fail(ErrorCode::kEnclaveDestroyed, "inference on a destroyed enclave");
  const auto& cost = enc.config().cost;
  const auto width = enc.config().enclave.param_bytes_per_element;
  const int L = g.size();

  InferenceTrace t;
  t.request_id = request_id;
  t.model = g.name();
  t.mode = plan.mode;
  t.partition = plan.partition;
  for (int i = 1; i <= L; ++i) {
    const auto& l = g.layer(i);
    LayerRecord r;
    r.index = i;
    r.name = l.name;
    r.kind = std::string(layer_kind_name(l.kind));
    r.placement = plan.route(g, i);
    t.layers.push_back(std::move(r));
  }
  const auto finish_meta = [&] {
    t.peak_memory_bytes = enc.layout().total();
    t.high_water_bytes = enc.high_water_bytes();
    t.recovery_ms = enc.creation_cost_ms();
  };
  if (L == 0) {
    finish_meta();
    return t;
  }

  // Input ingestion is charged to layer 1.
  {
    auto& r = t.layers.front();
    const auto elems = element_count(g.input_shape());
    const auto wire = num ? num->input.wire_bytes() : encrypted_input_bytes(g.input_shape());
    r.copy_ms += enc.copy_in(wire);
    r.bytes_copied_in += wire;
    enc.allocate(elems * kActivationBytes);
    enc.release(wire);
    r.enclave_compute_ms += static_cast<double>(elems) * cost.enclave_elem_ms;
    if (num) num->x = decrypt_input(enc, num->input, num->keys.input, num->model.field);
  }
  std::uint64_t live = element_count(g.input_shape()) * kActivationBytes;

  int i = 1;
  for (; i <= L; ++i) {
    const auto placement = plan.route(g, i);
    if (placement == Placement::kUntrusted) break;
    const auto& l = g.layer(i);
    auto& r = t.layers[static_cast<std::size_t>(i - 1)];
    const auto in_elems = static_cast<double>(l.input_elements());
    const auto out_elems = l.output_elements();
    const auto out_b = out_elems * kActivationBytes;

    if (placement == Placement::kEnclave) {
      if (is_linear(l.kind)) {
        const auto load = enc.load_params(i, true);
        r.param_load_ms += load.cost_ms;
        r.params_loaded_bytes += load.bytes;
        const auto pbytes = layer_params_bytes(g, i, width) + layer_bias_bytes(g, i, width);
        enc.allocate(out_b);
        r.enclave_compute_ms += static_cast<double>(l.macs()) * cost.enclave_mac_ms +
                                static_cast<double>(pbytes) * cost.enclave_param_ms_per_byte +
                                static_cast<double>(out_elems) * cost.enclave_elem_ms;
        enc.release(live);
        if (num) {
          const auto& w = num->model.weights_for(i);
          num->x = finish_linear(l, w, linear_part(l, w, num->x));
        }
      } else {
        enc.allocate(out_b);
        r.enclave_compute_ms += in_elems * cost.enclave_elem_ms;
        enc.release(live);
        if (num) {
          if (l.kind == LayerKind::kSoftmax) {
            num->output = softmax_layer(num->x);
          } else {
            num->x = pool_layer(l, num->x);
          }
        }
      }
      live = out_b;
      continue;
    }

    // Blinded linear layer.
    const auto in_b = l.input_elements() * kActivationBytes;
    const auto rec_b = (out_elems + l.bias_elements()) * kActivationBytes;
    enc.allocate(in_b);
    r.blind_ms += static_cast<double>(in_b) * cost.blind_ms_per_byte;
    r.bytes_blinded += in_b;
    enc.release(in_b);
    r.copy_ms += enc.copy_out(in_b);
    r.bytes_copied_out += in_b;
    r.untrusted_compute_ms += static_cast<double>(l.macs()) * cost.untrusted_mac_ms;
    QuantizedTensor z;
    if (num) {
      num->stream.seek(request_id, i);
      const auto factors = gen_factors(num->stream, num->x.shape(), num->x.scale());
      auto resp = num->worker.call(
          {request_id, i, WorkerOp::kLinear, true, blind(num->x, factors)});
      z = std::move(resp.tensor);
    }
    r.copy_ms += enc.copy_in(out_b);
    r.bytes_copied_in += out_b;
    r.copy_ms += enc.copy_in(rec_b);
    r.bytes_copied_in += rec_b;
    r.blind_ms += static_cast<double>(out_b) * cost.blind_ms_per_byte;
    r.bytes_unblinded += out_b;
    enc.release(rec_b);
    r.enclave_compute_ms += static_cast<double>(out_elems) * cost.enclave_elem_ms;
    if (num) {
      const auto rec = open_unblinding(num->blob, i, num->keys.storage);
      num->x = finish_linear(l, rec.bias, num->model.field.scale, unblind(z, rec));
    }
    live = out_b;
  }

  if (i <= L) {
    // Tier boundary: the activation leaves the enclave in the clear.
    auto& r = t.layers[static_cast<std::size_t>(std::max(i - 1, 1) - 1)];
    r.copy_ms += enc.copy_out(live);
    r.bytes_copied_out += live;
    if (num) {
      auto resp = num->worker.call({request_id, i, WorkerOp::kRunFrom, false, num->x});
      num->output = std::move(resp.probabilities);
    }
    for (int j = i; j <= L; ++j) {
      const auto& l = g.layer(j);
      auto& u = t.layers[static_cast<std::size_t>(j - 1)];
      if (is_linear(l.kind)) {
        u.untrusted_compute_ms += static_cast<double>(l.macs()) * cost.untrusted_mac_ms +
                                  static_cast<double>(l.output_elements()) * cost.untrusted_elem_ms;
      } else {
        u.untrusted_compute_ms += static_cast<double>(l.input_elements()) * cost.untrusted_elem_ms;
      }
    }
  } else {
    auto& r = t.layers.back();
    r.copy_ms += enc.copy_out(live);
    r.bytes_copied_out += live;
    if (num && g.layer(L).kind != LayerKind::kSoftmax) num->output = dequantize(num->x);
  }
  finish_meta();
  return t;
}

}  // namespace

SessionKeys SessionKeys::from_seed(std::uint64_t seed) {
  SessionKeys k;
  k.input = derive<32>(seed, "input");
  k.stream = derive<32>(seed, "blinding");
  k.storage = derive<32>(seed, "storage");
  return k;
}

UnblindingBlob precompute_request(const Model& model, const PartitionPlan& plan,
                                  const SessionKeys& keys, std::uint64_t request_id) {
  const auto& g = model.graph;
  plan.validate(g);
  std::vector<UnblindingRecord> records;
  BlindingStream stream(keys.stream, model.field.modulus);
  for (int i = 1; i <= plan.partition; ++i) {
    if (plan.route(g, i) != Placement::kBlinded) continue;
    const auto& l = g.layer(i);
    stream.seek(request_id, i);
    const auto r = gen_factors(stream, batched(l.input_shape), model.field.scale);
    records.push_back(precompute_unblinding(l, model.weights_for(i), r));
  }
  return seal_unblinding(request_id, records, keys.storage);
}

InferenceSession::InferenceSession(const Model& model, const PartitionPlan& plan,
                                   const SimConfig& config, WorkerTransport& worker,
                                   const SessionKeys& keys)
    : model_(model),
      plan_(plan),
      config_(config),
      worker_(worker),
      keys_(keys),
      enclave_(create_enclave(plan, model.graph, config)),
      stream_(keys.stream, model.field.modulus) {}

void InferenceSession::prepare(std::uint64_t request_id) {
  prepared_[request_id] = precompute_request(model_, plan_, keys_, request_id);
}

InferenceResult InferenceSession::run(std::uint64_t request_id, const EncryptedInput& input) {
  if (!enclave_.alive()) fail(ErrorCode::kEnclaveDestroyed, "inference on a destroyed enclave");
  if (!prepared_.count(request_id)) prepare(request_id);
  const auto blob = std::move(prepared_.at(request_id));
  prepared_.erase(request_id);
  Numerics num{model_, worker_, stream_, blob, keys_, input, {}, {}};
  InferenceResult out;
  out.trace = execute(model_.graph, plan_, enclave_, request_id, &num);
  out.probabilities = std::move(num.output);
  return out;
}

double InferenceSession::recover() {
  auto r = origami::recover(plan_, model_.graph, config_);
  enclave_ = std::move(r.state);
  return r.recovery_ms;
}

InferenceResult run_inference(const Model& model, const PartitionPlan& plan,
                              const EncryptedInput& input, const SessionKeys& keys,
                              const SimConfig& config, std::uint64_t request_id) {
  UntrustedWorker worker(model);
  worker.guard(plan);
  InProcessTransport transport(worker);
  InferenceSession session(model, plan, config, transport, keys);
  return session.run(request_id, input);
}

InferenceTrace simulate_trace(const ModelGraph& graph, const PartitionPlan& plan,
                              const SimConfig& config, std::uint64_t request_id) {
  auto enc = create_enclave(plan, graph, config);
  return execute(graph, plan, enc, request_id, nullptr);
}

}  // namespace origami
