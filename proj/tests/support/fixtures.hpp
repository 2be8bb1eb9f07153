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

#include <filesystem>
#include <random>
#include <string>

#include "origami/model.hpp"

namespace origami::testing {

QuantizedTensor random_field_tensor(const Shape& shape, std::mt19937_64& rng,
                                    std::uint32_t modulus = kDefaultModulus,
                                    std::int64_t scale = 1);

// Signed values uniform in [-bound, bound].
QuantizedTensor random_small_tensor(const Shape& shape, std::mt19937_64& rng,
                                    std::int64_t bound,
                                    std::uint32_t modulus = kDefaultModulus,
                                    std::int64_t scale = 1);

FloatTensor random_image(const Shape& shape, std::mt19937_64& rng);

Model toy_model(std::uint64_t seed);
// VGG-16 layer list at a 32x32x3 input.
Model vgg16_small_model(std::uint64_t seed);

// Fresh empty directory under the system temp path.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace origami::testing
