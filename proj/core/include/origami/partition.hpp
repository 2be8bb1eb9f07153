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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "origami/model.hpp"

namespace origami {

inline constexpr double kDefaultThreshold = 0.2;

double threshold_default();

// Throws kInvalidArgument unless 0 < tau < 1.
void validate_threshold(double tau);

// Mean reconstruction SSIM achievable from a layer's feature maps.
using ReconstructabilityOracle = std::function<double(int layer_index)>;

struct PartitionDecision {
  std::optional<int> partition;
  double threshold = kDefaultThreshold;
  std::map<int, double> scores;  // every layer the oracle was asked about
  std::vector<int> rejected_candidates;
  std::optional<double> next_score;   // oracle(p + 1)
  std::optional<double> next2_score;  // oracle(p + 2)

  bool found() const { return partition.has_value(); }
};

// Earliest p with oracle(p), oracle(p+1), oracle(p+2) all below tau. A
// candidate that fails verification resumes the scan at p + 1; candidates
// without two following layers are rejected.
PartitionDecision find_partition(int layer_count, const ReconstructabilityOracle& oracle,
                                 double tau = kDefaultThreshold);
PartitionDecision find_partition(const ModelGraph& graph,
                                 const ReconstructabilityOracle& oracle,
                                 double tau = kDefaultThreshold);

// Oracle results file:
//   # origami-oracle-results v1
//   layer,mean_ssim
//   1,0.91
struct OracleResults {
  std::map<int, double> mean_ssim;
};

OracleResults parse_oracle_results(std::string_view text, std::string_view source);
std::string format_oracle_results(const OracleResults& results);

// Looks scores up in `results`; a missing layer raises kOracle.
ReconstructabilityOracle oracle_from_results(OracleResults results);

// Decision report: "# origami-partition v1" then key,value rows and the
// per-layer scores.
std::string format_decision(const PartitionDecision& decision);

}  // namespace origami
