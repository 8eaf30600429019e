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

// Hash throughput: SimHash over k and D, BASS on a 210x160x3 frame.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hashcount/hashing.h"

namespace hashcount {
namespace {

void BM_SimHash(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  SimHasher hasher(k, d, 1);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  std::vector<double> x(d);
  for (auto& v : x) v = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(hasher.Hash(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimHash)->Args({16, 100})->Args({64, 100})->Args({256, 100})->Args({64, 1024});

void BM_Bass(benchmark::State& state) {
  Image image{210, 160, 3, std::vector<int>(210 * 160 * 3)};
  std::mt19937_64 rng(3);
  for (auto& p : image.pixels) p = static_cast<int>(rng() % 256);
  const BassConfig config{static_cast<int>(state.range(0)), 20, 3};
  for (auto _ : state) benchmark::DoNotOptimize(BassFeatures(image, config));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Bass)->Arg(5)->Arg(10);

void BM_GridHash(benchmark::State& state) {
  const GridHashConfig config{{0.2, 0.2, 0.1, 0.1}};
  const std::vector<double> x = {0.31, -0.72, 0.05, -0.15};
  for (auto _ : state) benchmark::DoNotOptimize(GridHash(x, config));
}
BENCHMARK(BM_GridHash);

}  // namespace
}  // namespace hashcount

BENCHMARK_MAIN();
