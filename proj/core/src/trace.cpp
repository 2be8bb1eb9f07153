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

#include "origami/trace.hpp"

#include <cmath>

#include "json.hpp"
#include "origami/error.hpp"

namespace origami {
namespace {

using nlohmann::ordered_json;

Placement parse_placement(const std::string& s) {
  for (auto p : {Placement::kEnclave, Placement::kBlinded, Placement::kUntrusted}) {
    if (placement_name(p) == s) return p;
  }
  fail(ErrorCode::kCorrupt, "unknown placement '" + s + "'");
}

ordered_json totals_json(const TraceTotals& t) {
  return {{"enclave_compute_ms", t.enclave_compute_ms},
          {"untrusted_compute_ms", t.untrusted_compute_ms},
          {"copy_ms", t.copy_ms},
          {"param_load_ms", t.param_load_ms},
          {"blind_ms", t.blind_ms},
          {"total_ms", t.total_ms},
          {"bytes_blinded", t.bytes_blinded},
          {"bytes_unblinded", t.bytes_unblinded},
          {"bytes_copied_in", t.bytes_copied_in},
          {"bytes_copied_out", t.bytes_copied_out},
          {"params_loaded_bytes", t.params_loaded_bytes}};
}

bool close(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TraceTotals InferenceTrace::totals() const {
  TraceTotals t;
  for (const auto& r : layers) {
    t.enclave_compute_ms += r.enclave_compute_ms;
    t.untrusted_compute_ms += r.untrusted_compute_ms;
    t.copy_ms += r.copy_ms;
    t.param_load_ms += r.param_load_ms;
    t.blind_ms += r.blind_ms;
    t.total_ms += r.total_ms();
    t.bytes_blinded += r.bytes_blinded;
    t.bytes_unblinded += r.bytes_unblinded;
    t.bytes_copied_in += r.bytes_copied_in;
    t.bytes_copied_out += r.bytes_copied_out;
    t.params_loaded_bytes += r.params_loaded_bytes;
  }
  return t;
}

std::string trace_to_json(const InferenceTrace& trace) {
  ordered_json layers = ordered_json::array();
  for (const auto& r : trace.layers) {
    layers.push_back({{"index", r.index},
                      {"name", r.name},
                      {"kind", r.kind},
                      {"placement", std::string(placement_name(r.placement))},
                      {"enclave_compute_ms", r.enclave_compute_ms},
                      {"untrusted_compute_ms", r.untrusted_compute_ms},
                      {"copy_ms", r.copy_ms},
                      {"param_load_ms", r.param_load_ms},
                      {"blind_ms", r.blind_ms},
                      {"bytes_blinded", r.bytes_blinded},
                      {"bytes_unblinded", r.bytes_unblinded},
                      {"bytes_copied_in", r.bytes_copied_in},
                      {"bytes_copied_out", r.bytes_copied_out},
                      {"params_loaded_bytes", r.params_loaded_bytes}});
  }
  ordered_json doc = {{"format", "origami-trace"},
                      {"version", kTraceFormatVersion},
                      {"request_id", trace.request_id},
                      {"model", trace.model},
                      {"mode", mode_name(trace.mode)},
                      {"partition", trace.partition},
                      {"peak_memory_bytes", trace.peak_memory_bytes},
                      {"high_water_bytes", trace.high_water_bytes},
                      {"recovery_ms", trace.recovery_ms},
                      {"layers", layers},
                      {"totals", totals_json(trace.totals())}};
  return doc.dump(2) + "\n";
}

InferenceTrace trace_from_json(std::string_view text, std::string_view source) {
  const std::string where = "trace " + std::string(source) + ": ";
  try {
    const auto doc = ordered_json::parse(text);
    if (doc.at("format").get<std::string>() != "origami-trace") {
      fail(ErrorCode::kCorrupt, where + "not an origami trace");
    }
    if (doc.at("version").get<int>() != kTraceFormatVersion) {
      fail(ErrorCode::kCorrupt, where + "unsupported version");
    }
    InferenceTrace t;
    t.request_id = doc.at("request_id").get<std::uint64_t>();
    t.model = doc.at("model").get<std::string>();
    t.mode = parse_mode(doc.at("mode").get<std::string>());
    t.partition = doc.at("partition").get<int>();
    t.peak_memory_bytes = doc.at("peak_memory_bytes").get<std::uint64_t>();
    t.high_water_bytes = doc.at("high_water_bytes").get<std::uint64_t>();
    t.recovery_ms = doc.at("recovery_ms").get<double>();
    for (const auto& l : doc.at("layers")) {
      LayerRecord r;
      r.index = l.at("index").get<int>();
      r.name = l.at("name").get<std::string>();
      r.kind = l.at("kind").get<std::string>();
      r.placement = parse_placement(l.at("placement").get<std::string>());
      r.enclave_compute_ms = l.at("enclave_compute_ms").get<double>();
      r.untrusted_compute_ms = l.at("untrusted_compute_ms").get<double>();
      r.copy_ms = l.at("copy_ms").get<double>();
      r.param_load_ms = l.at("param_load_ms").get<double>();
      r.blind_ms = l.at("blind_ms").get<double>();
      r.bytes_blinded = l.at("bytes_blinded").get<std::uint64_t>();
      r.bytes_unblinded = l.at("bytes_unblinded").get<std::uint64_t>();
      r.bytes_copied_in = l.at("bytes_copied_in").get<std::uint64_t>();
      r.bytes_copied_out = l.at("bytes_copied_out").get<std::uint64_t>();
      r.params_loaded_bytes = l.at("params_loaded_bytes").get<std::uint64_t>();
      t.layers.push_back(std::move(r));
    }
    const auto& st = doc.at("totals");
    const TraceTotals sum = t.totals();
    const bool ok =
        close(st.at("total_ms").get<double>(), sum.total_ms) &&
        close(st.at("blind_ms").get<double>(), sum.blind_ms) &&
        close(st.at("copy_ms").get<double>(), sum.copy_ms) &&
        st.at("bytes_blinded").get<std::uint64_t>() == sum.bytes_blinded &&
        st.at("bytes_unblinded").get<std::uint64_t>() == sum.bytes_unblinded &&
        st.at("bytes_copied_in").get<std::uint64_t>() == sum.bytes_copied_in &&
        st.at("bytes_copied_out").get<std::uint64_t>() == sum.bytes_copied_out;
    if (!ok) fail(ErrorCode::kCorrupt, where + "totals disagree with layer records");
    return t;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorrupt) throw;
    fail(ErrorCode::kCorrupt, where + e.what());
  } catch (const std::exception& e) {
    fail(ErrorCode::kCorrupt, where + e.what());
  }
}

}  // namespace origami
