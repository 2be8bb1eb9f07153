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
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "origami/image_io.hpp"
#include "origami/partition.hpp"
#include "origami/report.hpp"

namespace origami {
namespace {

namespace fs = std::filesystem;
using cli::run_cli;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const fs::path kData = ORIGAMI_TEST_DATA;

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"run", "--simulate"}).code, cli::kExitUsage);
  const auto missing = cli({"run", "--model", "/nonexistent/model.cfg", "--simulate"});
  EXPECT_EQ(missing.code, cli::kExitUsage);
  EXPECT_NE(missing.err.find("model"), std::string::npos);
  EXPECT_EQ(cli({"ssim", "--real", "x"}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"run", "--model", "toy5", "--modes", "origami", "--simulate"}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, cli::kExitOk);
}

TEST(Cli, ValidatePrintsLayerTable) {
  const auto r = cli({"validate", "--model", "vgg16", "--modes", "baseline2,origami/6"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("22 layers"), std::string::npos);
  EXPECT_NE(r.out.find("fc1"), std::string::npos);
  EXPECT_EQ(cli({"validate", "--model", "vgg16", "--modes", "origami/40"}).code, cli::kExitError);
  EXPECT_EQ(cli({"validate", "--model", "toy5", "--oracle", (kData / "oracle_example.csv").string()}).code,
            cli::kExitOk);
}

TEST(Cli, FindPartitionExitCodesAndThreshold) {
  const auto dir = testing::temp_dir("cli_find");
  const auto ok = cli({"find-partition", "--oracle", (kData / "oracle_example.csv").string(), "--out",
                       (dir / "decision.txt").string()});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("partition,6"), std::string::npos) << ok.out;
  EXPECT_EQ(read_text_file(dir / "decision.txt"), ok.out);

  const auto none = cli({"find-partition", "--oracle", (kData / "oracle_high.csv").string()});
  EXPECT_EQ(none.code, cli::kExitNoPartition);

  const auto strict = cli({"find-partition", "--oracle", (kData / "oracle_example.csv").string(),
                           "--threshold", "0.12"});
  EXPECT_EQ(strict.code, cli::kExitNoPartition);
  const auto loose = cli({"find-partition", "--oracle", (kData / "oracle_high.csv").string(),
                          "--threshold", "0.95"});
  EXPECT_EQ(loose.code, cli::kExitOk);
  EXPECT_NE(loose.out.find("partition,1"), std::string::npos) << loose.out;
  EXPECT_EQ(cli({"find-partition", "--oracle", (kData / "oracle_example.csv").string(), "--threshold", "1.5"})
                .code,
            cli::kExitError);

  write_text_file(dir / "exp.json", "{\"threshold\": 0.95, \"oracle\": \"" +
                                        (kData / "oracle_high.csv").string() + "\"}");
  const auto cfg = cli({"find-partition", "--oracle", (kData / "oracle_example.csv").string(), "--config",
                        (dir / "exp.json").string()});
  EXPECT_EQ(cfg.code, cli::kExitOk) << cfg.err;
  EXPECT_NE(cfg.out.find("partition,1"), std::string::npos);
}

TEST(Cli, RunSingleModeEmitsOneRow) {
  const auto dir = testing::temp_dir("cli_run");
  const auto r = cli({"run", "--model", "toy5", "--modes", "origami/3", "--inputs", "2", "--out", dir.string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto table = parse_csv(read_text_file(dir / "summary.csv"), "summary.csv");
  EXPECT_EQ(table.rows.size(), 1u);
  EXPECT_TRUE(fs::exists(dir / "trace_toy5_origami-3.json"));
}

TEST(Cli, RunAllModesWithSocketAndReport) {
  const auto dir = testing::temp_dir("cli_all");
  const auto r = cli({"run", "--model", "toy5", "--partition", "3", "--transport", "socket", "--inputs", "2",
                      "--out", (dir / "traces").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("outputs identical across 5 modes"), std::string::npos);
  const auto rep = cli({"report", "--traces", (dir / "traces").string(), "--out", (dir / "report").string()});
  EXPECT_EQ(rep.code, cli::kExitOk) << rep.err;
  EXPECT_TRUE(fs::exists(dir / "report" / "comparison.csv"));
  const auto again = cli({"report", "--traces", (dir / "traces").string()});
  EXPECT_EQ(again.out, rep.out);
  EXPECT_EQ(cli({"report", "--traces", testing::temp_dir("cli_empty").string()}).code, cli::kExitError);
}

TEST(Cli, Vgg16SimulatedOrderings) {
  const auto r = cli({"run", "--model", "vgg16", "--simulate", "--partition", "6", "--modes",
                      "baseline2,split/6,split/8,split/10,slalom,origami,untrusted", "--assert-orderings"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("orderings hold"), std::string::npos);
}

TEST(Cli, ExperimentConfigOverridesFlags) {
  const auto dir = testing::temp_dir("cli_cfg");
  write_text_file(dir / "exp.json", "{\"model\": \"toy5\", \"modes\": [\"baseline2\", \"slalom\"], "
                                    "\"simulate\": true, \"out\": \"" + (dir / "o").string() + "\"}");
  const auto r = cli({"run", "--model", "vgg19", "--modes", "untrusted", "--config", (dir / "exp.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto t = parse_csv(read_text_file(dir / "o" / "summary.csv"), "s");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "toy5");
  write_text_file(dir / "bad.json", "{\"colour\": 1}");
  EXPECT_EQ(cli({"run", "--config", (dir / "bad.json").string()}).code, cli::kExitError);
}

TEST(Cli, ExportMapsAndSsimFeedTheOracleFile) {
  const auto dir = testing::temp_dir("cli_pipeline");
  std::mt19937_64 rng(5);
  fs::create_directories(dir / "data");
  fs::create_directories(dir / "fake");
  for (int i = 0; i < 3; ++i) {
    const auto img = testing::random_image({8, 8, 3}, rng);
    write_image(dir / "data" / ("im" + std::to_string(i) + ".png"), img);
    write_image(dir / "fake" / ("im" + std::to_string(i) + ".png"), testing::random_image({8, 8, 3}, rng));
  }
  const auto e = cli({"export-maps", "--model", "toy5", "--layer", "2", "--dataset", (dir / "data").string(),
                      "--out", (dir / "maps").string()});
  EXPECT_EQ(e.code, cli::kExitOk) << e.err;
  EXPECT_TRUE(fs::exists(dir / "maps" / "layer_2.orgf"));
  EXPECT_TRUE(fs::exists(dir / "maps" / "manifest.json"));

  // 8x8 images are smaller than the SSIM window.
  EXPECT_EQ(cli({"ssim", "--real", (dir / "data").string(), "--fake", (dir / "fake").string()}).code,
            cli::kExitError);

  fs::create_directories(dir / "real16");
  fs::create_directories(dir / "same16");
  for (int i = 0; i < 2; ++i) {
    const auto img = testing::random_image({16, 16, 1}, rng);
    write_image(dir / "real16" / ("p" + std::to_string(i) + ".pgm"), img);
    write_image(dir / "same16" / ("p" + std::to_string(i) + ".pgm"), img);
  }
  const auto oracle = (dir / "oracle.csv").string();
  const auto s = cli({"ssim", "--real", (dir / "real16").string(), "--fake", (dir / "same16").string(), "--layer",
                      "4", "--oracle-out", oracle, "--out", (dir / "ssim.csv").string()});
  EXPECT_EQ(s.code, cli::kExitOk) << s.err;
  const auto t = parse_csv(read_text_file(dir / "ssim.csv"), "ssim.csv");
  EXPECT_EQ(t.title, "origami-ssim v1");
  EXPECT_EQ(t.rows.back()[1], "mean");
  EXPECT_EQ(t.rows.back()[2], "1.000000");
  EXPECT_EQ(parse_oracle_results(read_text_file(oracle), oracle).mean_ssim.at(4), 1.0);
}

}  // namespace
}  // namespace origami
