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

#include "origami/error.hpp"
#include "origami/plan.hpp"

namespace origami {
namespace {

class PlanTest : public ::testing::Test {
 protected:
  ModelGraph g = parse_model_config(vgg_config(16));
};

TEST_F(PlanTest, ModeNamesRoundTrip) {
  for (const auto& m : {ExecutionMode::baseline2(), ExecutionMode::split(6), ExecutionMode::slalom(),
                        ExecutionMode::origami(8), ExecutionMode::untrusted_only()}) {
    EXPECT_EQ(parse_mode(mode_name(m)), m);
  }
  EXPECT_THROW(parse_mode("origami/"), Error);
  EXPECT_THROW(parse_mode("origami/0"), Error);
  EXPECT_THROW(parse_mode("split/3x"), Error);
  EXPECT_THROW(parse_mode("fast"), Error);
}

TEST_F(PlanTest, Baseline2KeepsEverythingInEnclave) {
  const auto p = make_plan(ExecutionMode::baseline2(), g);
  EXPECT_EQ(p.partition, 22);
  for (int i = 1; i <= 22; ++i) EXPECT_EQ(p.route(g, i), Placement::kEnclave);
  p.validate(g);
}

TEST_F(PlanTest, SlalomBlindsEveryLinearLayer) {
  const auto p = make_plan(ExecutionMode::slalom(), g);
  EXPECT_EQ(p.partition, 22);
  for (int i = 1; i <= 22; ++i) {
    EXPECT_EQ(p.route(g, i), is_linear(g.layer(i).kind) ? Placement::kBlinded : Placement::kEnclave);
  }
}

TEST_F(PlanTest, OrigamiBlindsTierOneOnly) {
  const auto p = make_plan(ExecutionMode::origami(6), g);
  EXPECT_EQ(p.partition, 6);
  EXPECT_EQ(p.route(g, 1), Placement::kBlinded);
  EXPECT_EQ(p.route(g, 3), Placement::kEnclave);
  EXPECT_EQ(p.route(g, 6), Placement::kEnclave);
  EXPECT_EQ(p.route(g, 7), Placement::kUntrusted);
  EXPECT_EQ(p.route(g, 22), Placement::kUntrusted);
}

TEST_F(PlanTest, SplitAndUntrusted) {
  const auto s = make_plan(ExecutionMode::split(8), g);
  EXPECT_EQ(s.route(g, 8), Placement::kEnclave);
  EXPECT_EQ(s.route(g, 9), Placement::kUntrusted);
  const auto u = make_plan(ExecutionMode::untrusted_only(), g);
  EXPECT_EQ(u.partition, 0);
  for (int i = 1; i <= 22; ++i) EXPECT_EQ(u.route(g, i), Placement::kUntrusted);
}

TEST_F(PlanTest, OutOfRangePartitionRejected) {
  EXPECT_THROW(make_plan(ExecutionMode::origami(23), g), Error);
  EXPECT_THROW(make_plan(ExecutionMode::split(0), g), Error);
  EXPECT_THROW((PartitionPlan{5, ExecutionMode::baseline2()}.validate(g)), Error);
  EXPECT_THROW((PartitionPlan{3, ExecutionMode::untrusted_only()}.validate(g)), Error);
  EXPECT_THROW((PartitionPlan{4, ExecutionMode::origami(6)}.validate(g)), Error);
  EXPECT_THROW((PartitionPlan{30, ExecutionMode::slalom()}.validate(g)), Error);
}

}  // namespace
}  // namespace origami
