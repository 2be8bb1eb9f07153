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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "origami/error.hpp"
#include "origami/image_io.hpp"
#include "origami/ssim.hpp"

namespace origami {
namespace {

using testing::random_image;

TEST(Ssim, IdenticalImagesScoreOne) {
  std::mt19937_64 rng(1);
  for (const Shape& s : {Shape{16, 16}, Shape{20, 13, 3}, Shape{11, 11, 1}}) {
    const auto x = random_image(s, rng);
    EXPECT_NEAR(ssim(x, x), 1.0, 1e-9);
  }
  const FloatTensor flat({12, 12}, std::vector<double>(144, 0.3));
  EXPECT_NEAR(ssim(flat, flat), 1.0, 1e-9);
}

TEST(Ssim, SymmetricAndBounded) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Shape s = i % 2 ? Shape{12, 14} : Shape{11, 12, 3};
    const auto a = random_image(s, rng);
    auto b = random_image(s, rng);
    if (i % 3 == 0) {
      std::vector<double> inv(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) inv[k] = 1.0 - a[k];
      b = FloatTensor(s, inv);
    }
    const double ab = ssim(a, b), ba = ssim(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GE(ab, -1.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(Ssim, IndependentNoiseIsNearZero) {
  std::mt19937_64 rng(3);
  double sum = 0;
  for (int i = 0; i < 100; ++i) sum += ssim(random_image({64, 64}, rng), random_image({64, 64}, rng));
  EXPECT_LT(std::abs(sum / 100), 0.05);
}

TEST(Ssim, ShufflingDecreasesSimilarity) {
  std::mt19937_64 rng(4);
  std::vector<double> smooth(32 * 32);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 32; ++x) smooth[y * 32 + x] = 0.5 + 0.4 * std::sin(x / 3.0) * std::cos(y / 4.0);
  const FloatTensor a({32, 32}, smooth);
  for (int i = 0; i < 20; ++i) {
    auto v = smooth;
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_LT(ssim(a, FloatTensor({32, 32}, v)), ssim(a, a));
  }
}

TEST(Ssim, InvariantUnderCommonScalingWithRange) {
  std::mt19937_64 rng(5);
  const auto a = random_image({16, 16}, rng);
  const auto b = random_image({16, 16}, rng);
  std::vector<double> a2(a.size()), b2(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a2[i] = 255 * a[i];
    b2[i] = 255 * b[i];
  }
  SsimParams p;
  p.dynamic_range = 255;
  EXPECT_NEAR(ssim(a, b), ssim(FloatTensor({16, 16}, a2), FloatTensor({16, 16}, b2), p), 1e-9);
}

TEST(Ssim, ColourIsMeanOfChannels) {
  std::mt19937_64 rng(6);
  const auto a = random_image({14, 14, 3}, rng);
  const auto b = random_image({14, 14, 3}, rng);
  double sum = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> ca, cb;
    for (std::size_t i = c; i < a.size(); i += 3) {
      ca.push_back(a[i]);
      cb.push_back(b[i]);
    }
    sum += ssim(FloatTensor({14, 14}, ca), FloatTensor({14, 14}, cb));
  }
  EXPECT_NEAR(ssim(a, b), sum / 3, 1e-12);
}

TEST(Ssim, MatchesScikitImageGoldenValues) {
  const std::filesystem::path dir = std::filesystem::path(ORIGAMI_TEST_DATA) / "ssim";
  std::ifstream in(dir / "golden.csv");
  ASSERT_TRUE(in) << dir;
  std::string line;
  std::getline(in, line);
  int checked = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string name, ext, value;
    std::getline(ss, name, ',');
    std::getline(ss, ext, ',');
    std::getline(ss, value, ',');
    const auto a = read_image(dir / (name + "_a." + ext));
    const auto b = read_image(dir / (name + "_b." + ext));
    EXPECT_NEAR(ssim(a, b), std::stod(value), 1e-9) << name;
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(Ssim, Errors) {
  std::mt19937_64 rng(7);
  EXPECT_THROW(ssim(random_image({12, 12}, rng), random_image({12, 13}, rng)), Error);
  EXPECT_THROW(ssim(random_image({10, 12}, rng), random_image({10, 12}, rng)), Error);
  EXPECT_THROW(ssim(random_image({12}, rng), random_image({12}, rng)), Error);
}

TEST(Ssim, MeanReport) {
  std::mt19937_64 rng(8);
  std::vector<FloatTensor> reals, fakes;
  for (int i = 0; i < 4; ++i) reals.push_back(random_image({12, 12}, rng));
  const auto same = mean_ssim(reals, reals, 3);
  EXPECT_EQ(same.layer_index, 3);
  EXPECT_NEAR(same.mean, 1.0, 1e-9);
  for (int i = 0; i < 4; ++i) fakes.push_back(random_image({12, 12}, rng));
  const auto r = mean_ssim(reals, fakes);
  ASSERT_EQ(r.values.size(), 4u);
  EXPECT_NEAR(r.mean, (r.values[0] + r.values[1] + r.values[2] + r.values[3]) / 4, 1e-15);
  EXPECT_THROW(mean_ssim(reals, std::span<const FloatTensor>(fakes).first(3)), Error);
  EXPECT_THROW(mean_ssim(std::span<const FloatTensor>{}, std::span<const FloatTensor>{}), Error);
}

}  // namespace
}  // namespace origami
