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

#include "origami/partition.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "origami/error.hpp"

namespace origami {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double threshold_default() { return kDefaultThreshold; }

void validate_threshold(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "threshold must lie in (0, 1), got " + fmt(tau));
  }
}

PartitionDecision find_partition(int layer_count, const ReconstructabilityOracle& oracle,
                                 double tau) {
  validate_threshold(tau);
  if (layer_count < 3) {
    fail(ErrorCode::kInvalidArgument, "partition search needs at least 3 layers");
  }
  PartitionDecision d;
  d.threshold = tau;
  const auto query = [&](int l) {
    if (auto it = d.scores.find(l); it != d.scores.end()) return it->second;
    double v = 0;
    try {
      v = oracle(l);
    } catch (const std::exception& e) {
      fail(ErrorCode::kOracle, "oracle failed at layer " + std::to_string(l) + ": " + e.what());
    }
    if (!(v >= -1.0 && v <= 1.0)) {
      fail(ErrorCode::kOracle, "oracle returned " + fmt(v) + " at layer " + std::to_string(l) +
                                   ", outside [-1, 1]");
    }
    d.scores[l] = v;
    return v;
  };

  for (int l = 1; l <= layer_count; ++l) {
    if (query(l) >= tau) continue;
    if (l + 2 > layer_count) {
      d.rejected_candidates.push_back(l);
      break;
    }
    const double s1 = query(l + 1);
    if (s1 >= tau) {
      d.rejected_candidates.push_back(l);
      continue;
    }
    const double s2 = query(l + 2);
    if (s2 >= tau) {
      d.rejected_candidates.push_back(l);
      continue;
    }
    d.partition = l;
    d.next_score = s1;
    d.next2_score = s2;
    break;
  }
  return d;
}

PartitionDecision find_partition(const ModelGraph& graph, const ReconstructabilityOracle& oracle,
                                 double tau) {
  return find_partition(graph.size(), oracle, tau);
}

OracleResults parse_oracle_results(std::string_view text, std::string_view source) {
  const std::string where = "oracle results " + std::string(source);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false, columns = false;
  OracleResults r;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    const std::string at = where + ":" + std::to_string(line_no) + ": ";
    if (!header) {
      if (t != "# origami-oracle-results v1") fail(ErrorCode::kParse, at + "missing header");
      header = true;
      continue;
    }
    if (t.empty() || t[0] == '#') continue;
    if (!columns) {
      if (t != "layer,mean_ssim") fail(ErrorCode::kParse, at + "expected 'layer,mean_ssim'");
      columns = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos) fail(ErrorCode::kParse, at + "expected two fields");
    int layer = 0;
    double value = 0;
    try {
      std::size_t used = 0;
      const auto ls = trim(t.substr(0, comma));
      layer = std::stoi(ls, &used);
      if (used != ls.size()) throw std::invalid_argument("layer");
      const auto vs = trim(t.substr(comma + 1));
      value = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, at + "malformed record '" + t + "'");
    }
    if (layer < 1) fail(ErrorCode::kParse, at + "layer index must be >= 1");
    if (!(value >= -1.0 && value <= 1.0)) fail(ErrorCode::kParse, at + "mean SSIM outside [-1, 1]");
    if (!r.mean_ssim.emplace(layer, value).second) {
      fail(ErrorCode::kParse, at + "duplicate layer " + std::to_string(layer));
    }
  }
  if (!columns) fail(ErrorCode::kParse, where + ": missing header or column line");
  return r;
}

std::string format_oracle_results(const OracleResults& results) {
  std::ostringstream os;
  os << "# origami-oracle-results v1\nlayer,mean_ssim\n";
  for (const auto& [l, v] : results.mean_ssim) os << l << "," << fmt(v) << "\n";
  return os.str();
}

ReconstructabilityOracle oracle_from_results(OracleResults results) {
  return [r = std::move(results)](int layer) {
    const auto it = r.mean_ssim.find(layer);
    if (it == r.mean_ssim.end()) {
      fail(ErrorCode::kOracle, "no oracle result for layer " + std::to_string(layer));
    }
    return it->second;
  };
}

std::string format_decision(const PartitionDecision& d) {
  std::ostringstream os;
  os << "# origami-partition v1\n";
  os << "key,value\n";
  os << "status," << (d.found() ? "found" : "no-partition") << "\n";
  os << "partition," << (d.found() ? std::to_string(*d.partition) : "") << "\n";
  os << "threshold," << fmt(d.threshold) << "\n";
  os << "next_score," << (d.next_score ? fmt(*d.next_score) : "") << "\n";
  os << "next2_score," << (d.next2_score ? fmt(*d.next2_score) : "") << "\n";
  os << "rejected_candidates,";
  for (std::size_t i = 0; i < d.rejected_candidates.size(); ++i) {
    os << (i ? " " : "") << d.rejected_candidates[i];
  }
  os << "\n\nlayer,mean_ssim,below_threshold\n";
  for (const auto& [l, v] : d.scores) {
    os << l << "," << fmt(v) << "," << (v < d.threshold ? 1 : 0) << "\n";
  }
  return os.str();
}

}  // namespace origami
