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

#include "fixtures.hpp"

#include <atomic>
#include <unistd.h>

namespace origami::testing {

QuantizedTensor random_field_tensor(const Shape& shape, std::mt19937_64& rng,
                                    std::uint32_t modulus, std::int64_t scale) {
  std::uniform_int_distribution<std::uint32_t> u(0, modulus - 1);
  std::vector<std::uint32_t> v(element_count(shape));
  for (auto& x : v) x = u(rng);
  return QuantizedTensor(shape, std::move(v), scale, modulus);
}

QuantizedTensor random_small_tensor(const Shape& shape, std::mt19937_64& rng,
                                    std::int64_t bound, std::uint32_t modulus,
                                    std::int64_t scale) {
  std::uniform_int_distribution<std::int64_t> u(-bound, bound);
  std::vector<std::uint32_t> v(element_count(shape));
  for (auto& x : v) x = to_field(u(rng), modulus);
  return QuantizedTensor(shape, std::move(v), scale, modulus);
}

FloatTensor random_image(const Shape& shape, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(element_count(shape));
  for (auto& x : v) x = u(rng);
  return FloatTensor(shape, std::move(v));
}

Model toy_model(std::uint64_t seed) {
  const auto g = parse_model_config(toy_config());
  return attach_weights(g, random_weights(g, seed));
}

Model vgg16_small_model(std::uint64_t seed) {
  const auto g = parse_model_config(vgg_config(16, 32, 32));
  return attach_weights(g, random_weights(g, seed));
}

std::filesystem::path temp_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("origami_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace origami::testing
