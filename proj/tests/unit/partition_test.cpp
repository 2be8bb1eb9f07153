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

#include <random>

#include "origami/error.hpp"
#include "origami/partition.hpp"

namespace origami {
namespace {

ReconstructabilityOracle from_vector(std::vector<double> v) {
  return [v](int l) { return v.at(static_cast<std::size_t>(l - 1)); };
}

// Independent reference: the smallest p whose window p, p+1, p+2 is below tau.
std::optional<int> brute_force(const std::vector<double>& v, double tau) {
  const int L = static_cast<int>(v.size());
  for (int p = 1; p + 2 <= L; ++p) {
    if (v[p - 1] < tau && v[p] < tau && v[p + 1] < tau) return p;
  }
  return std::nullopt;
}

TEST(Partition, ConstantLowOracleChoosesFirstLayer) {
  const auto d = find_partition(8, [](int) { return 0.05; });
  ASSERT_TRUE(d.found());
  EXPECT_EQ(*d.partition, 1);
  EXPECT_EQ(d.threshold, 0.2);
}

TEST(Partition, ConstantHighOracleFindsNothing) {
  const auto d = find_partition(8, [](int) { return 0.9; });
  EXPECT_FALSE(d.found());
  EXPECT_EQ(d.scores.size(), 8u);
}

TEST(Partition, HandTraceWithMaxPoolAnomaly) {
  const std::vector<double> v{0.9, 0.8, 0.10, 0.70, 0.30, 0.15, 0.10, 0.05};
  const auto d = find_partition(8, from_vector(v), 0.2);
  ASSERT_TRUE(d.found());
  EXPECT_EQ(*d.partition, 6);
  EXPECT_EQ(d.rejected_candidates, std::vector<int>{3});
  EXPECT_EQ(*d.next_score, 0.10);
  EXPECT_EQ(*d.next2_score, 0.05);
  EXPECT_EQ(d.scores.at(4), 0.70);
}

TEST(Partition, TailCandidatesAreRejected) {
  const auto d = find_partition(5, from_vector({0.9, 0.9, 0.9, 0.1, 0.1}));
  EXPECT_FALSE(d.found());
  const auto e = find_partition(5, from_vector({0.9, 0.9, 0.1, 0.1, 0.1}));
  EXPECT_EQ(*e.partition, 3);
}

TEST(Partition, AgreesWithBruteForceOnRandomTraces) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const int L = 3 + static_cast<int>(rng() % 23);
    std::vector<double> v(static_cast<std::size_t>(L));
    for (auto& x : v) x = u(rng);
    const double tau = 0.1 + 0.2 * (trial % 3);
    const auto d = find_partition(L, from_vector(v), tau);
    EXPECT_EQ(d.partition, brute_force(v, tau)) << "trial " << trial;
    if (d.found()) {
      const int p = *d.partition;
      EXPECT_LT(v[p - 1], tau);
      EXPECT_LT(v[p], tau);
      EXPECT_LT(v[p + 1], tau);
    }
    EXPECT_EQ(find_partition(L, from_vector(v), tau).partition, d.partition);
  }
}

TEST(Partition, ThresholdValidation) {
  EXPECT_EQ(threshold_default(), 0.2);
  validate_threshold(0.1);
  EXPECT_THROW(validate_threshold(0.0), Error);
  EXPECT_THROW(validate_threshold(1.0), Error);
  EXPECT_THROW(validate_threshold(-0.5), Error);
  EXPECT_THROW(find_partition(8, [](int) { return 0.1; }, 1.5), Error);
  const std::vector<double> v{0.9, 0.15, 0.15, 0.15, 0.05, 0.05, 0.05, 0.05};
  EXPECT_EQ(*find_partition(8, from_vector(v), 0.2).partition, 2);
  EXPECT_EQ(*find_partition(8, from_vector(v), 0.1).partition, 5);
}

TEST(Partition, OracleErrorsCarryLayerContext) {
  try {
    find_partition(6, [](int l) -> double {
      if (l == 2) throw std::runtime_error("gan diverged");
      return 0.9;
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOracle);
    EXPECT_NE(std::string(e.what()).find("layer 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("gan diverged"), std::string::npos);
  }
  EXPECT_THROW(find_partition(6, [](int) { return 3.0; }), Error);
  EXPECT_THROW(find_partition(2, [](int) { return 0.0; }), Error);
}

TEST(Partition, OracleResultsFileRoundTrip) {
  OracleResults r;
  const std::vector<double> v{0.9, 0.8, 0.10, 0.70, 0.30, 0.15, 0.10, 0.05};
  for (int i = 1; i <= 8; ++i) r.mean_ssim[i] = v[static_cast<std::size_t>(i - 1)];
  const auto text = format_oracle_results(r);
  EXPECT_EQ(text.rfind("# origami-oracle-results v1\nlayer,mean_ssim\n", 0), 0u);
  const auto back = parse_oracle_results(text, "mem");
  EXPECT_EQ(back.mean_ssim, r.mean_ssim);
  EXPECT_EQ(format_oracle_results(back), text);
  const auto d = find_partition(8, oracle_from_results(back));
  EXPECT_EQ(*d.partition, 6);
  const auto report = format_decision(d);
  EXPECT_EQ(report.rfind("# origami-partition v1", 0), 0u);
  EXPECT_THROW(find_partition(10, oracle_from_results(back), 0.01), Error);
}

TEST(Partition, OracleResultsFileErrors) {
  const std::string head = "# origami-oracle-results v1\nlayer,mean_ssim\n";
  for (const std::string bad : {std::string("layer,mean_ssim\n1,0.5\n"), head + "1;0.5\n", head + "0,0.5\n",
                                head + "1,1.5\n", head + "1,0.5\n1,0.4\n", head + "x,0.5\n",
                                std::string("")}) {
    try {
      parse_oracle_results(bad, "o.csv");
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
      EXPECT_NE(std::string(e.what()).find("o.csv"), std::string::npos);
    }
  }
}

}  // namespace
}  // namespace origami
