// Copyright 2026 The hashcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact dictionary vs Count-Min sketch on 64-bit SimHash keys. Arg is the
// number of distinct keys in the stream.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "hashcount/count_key.h"
#include "hashcount/counter.h"

namespace hashcount {
namespace {

std::vector<CountKey> Keys(std::size_t distinct, std::size_t n) {
  std::mt19937_64 rng(5);
  std::vector<CountKey> pool;
  for (std::size_t i = 0; i < distinct; ++i) {
    std::vector<std::uint8_t> bits(64);
    for (auto& b : bits) b = rng() & 1;
    pool.push_back(EncodeKey(BinaryCode(std::move(bits))));
  }
  std::vector<CountKey> stream;
  std::uniform_int_distribution<std::size_t> pick(0, distinct - 1);
  for (std::size_t i = 0; i < n; ++i) stream.push_back(pool[pick(rng)]);
  return stream;
}

std::unique_ptr<Counter> Make(bool sketch) {
  if (sketch) return std::make_unique<CountMinSketch>(kSixMillionPrimes);
  return std::make_unique<ExactCounter>();
}

template <bool kSketch>
void BM_Increment(benchmark::State& state) {
  const auto keys = Keys(static_cast<std::size_t>(state.range(0)), 1 << 16);
  auto counter = Make(kSketch);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter->Increment(keys[i]));
    i = (i + 1) & (keys.size() - 1);
  }
  state.SetItemsProcessed(state.iterations());
}

template <bool kSketch>
void BM_Query(benchmark::State& state) {
  const auto keys = Keys(static_cast<std::size_t>(state.range(0)), 1 << 16);
  auto counter = Make(kSketch);
  for (const auto& k : keys) counter->Increment(k);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter->Query(keys[i]));
    i = (i + 1) & (keys.size() - 1);
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_FoldKey(benchmark::State& state) {
  const auto keys = Keys(1024, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FoldKey(keys[i].bytes()));
    i = (i + 1) & 1023;
  }
}

BENCHMARK(BM_Increment<false>)->Name("Exact/Increment")->Arg(1000)->Arg(100000);
BENCHMARK(BM_Increment<true>)->Name("CountMin/Increment")->Arg(1000)->Arg(100000);
BENCHMARK(BM_Query<false>)->Name("Exact/Query")->Arg(1000)->Arg(100000);
BENCHMARK(BM_Query<true>)->Name("CountMin/Query")->Arg(1000)->Arg(100000);
BENCHMARK(BM_FoldKey);

}  // namespace
}  // namespace hashcount

BENCHMARK_MAIN();
