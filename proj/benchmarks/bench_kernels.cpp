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

#include <benchmark/benchmark.h>

#include <random>

#include "origami/kernels.hpp"
#include "origami/tensor.hpp"

namespace {

using namespace origami;

QuantizedTensor random_tensor(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> d(0, kDefaultModulus - 1);
  std::vector<std::uint32_t> v(element_count(shape));
  for (auto& x : v) x = d(rng);
  return QuantizedTensor(shape, std::move(v), kDefaultScale, kDefaultModulus);
}

void BM_Conv3x3(benchmark::State& state) {
  const auto hw = static_cast<std::size_t>(state.range(0));
  const auto c = static_cast<std::size_t>(state.range(1));
  const auto x = random_tensor({1, hw, hw, c}, 1);
  const auto w = random_tensor({3, 3, c, c}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(x, w, 1, 1));
  state.counters["MAC/s"] = benchmark::Counter(static_cast<double>(hw * hw * 9 * c * c),
                                               benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Conv3x3)->Args({32, 64})->Args({16, 128})->Args({8, 256})->Unit(benchmark::kMillisecond);

void BM_Dense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_tensor({1, n}, 3);
  const auto w = random_tensor({n, n}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dense(x, w));
  state.counters["MAC/s"] = benchmark::Counter(static_cast<double>(n * n),
                                               benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Dense)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ReluMaxpool(benchmark::State& state) {
  const auto x = random_tensor({1, 112, 112, 64}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(maxpool2d(relu(x), 2, 2));
}
BENCHMARK(BM_ReluMaxpool)->Unit(benchmark::kMillisecond);

}  // namespace
