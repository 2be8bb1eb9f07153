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

#include <vector>

#include "origami/blinding.hpp"
#include "origami/keystream.hpp"

namespace {

using namespace origami;

void BM_KeystreamFill(benchmark::State& state) {
  BlindingStream stream(seed_from_u64(1), kDefaultModulus);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    stream.fill(out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * out.size() * 4));
}
BENCHMARK(BM_KeystreamFill)->Arg(1 << 12)->Arg(1 << 18)->Arg(224 * 224 * 64);

void BM_BlindUnblind(benchmark::State& state) {
  const Shape shape{1, 224, 224, 64};
  BlindingStream stream(seed_from_u64(2), kDefaultModulus);
  const auto x = gen_factors(stream, shape, kDefaultScale);
  const auto r = gen_factors(stream, shape, kDefaultScale);
  UnblindingRecord rec;
  rec.u = r;
  for (auto _ : state) benchmark::DoNotOptimize(unblind(blind(x, r), rec));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * x.byte_size()));
}
BENCHMARK(BM_BlindUnblind)->Unit(benchmark::kMillisecond);

void BM_SealOpen(benchmark::State& state) {
  BlindingStream stream(seed_from_u64(3), kDefaultModulus);
  UnblindingRecord rec;
  rec.layer_index = 1;
  rec.u = gen_factors(stream, {1, static_cast<std::size_t>(state.range(0))}, kDefaultScale);
  const auto key = storage_key_from_u64(4);
  std::uint64_t req = 0;
  for (auto _ : state) {
    const auto blob = seal_unblinding(++req, std::span(&rec, 1), key);
    benchmark::DoNotOptimize(open_unblinding(blob, 1, key));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * rec.u.byte_size()));
}
BENCHMARK(BM_SealOpen)->Arg(1 << 12)->Arg(1 << 20);

}  // namespace
