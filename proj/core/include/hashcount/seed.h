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

#ifndef HASHCOUNT_SEED_H_
#define HASHCOUNT_SEED_H_

#include <cstdint>
#include <random>

namespace hashcount {

// Every stochastic component draws from std::mt19937_64. Seeds for
// independent streams are derived with the SplitMix64 finalizer so that a
// (parent, child) pair always maps to the same 64-bit stream seed.
using Rng = std::mt19937_64;

// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t SplitMix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of child stream `index` under `parent`.
constexpr std::uint64_t MixSeed(std::uint64_t parent,
                                std::uint64_t index) noexcept {
  return SplitMix64(SplitMix64(parent) ^ (index * 0xd1342543de82ef95ULL + 1));
}

// Named streams used by the experiment loop. Keeping them apart means the
// bonus path never perturbs the agent's random choices.
enum class Stream : std::uint64_t {
  kAgent = 1,
  kEnvironment = 2,
  kHasher = 3,
  kAutoencoderInit = 4,
  kAutoencoderNoise = 5,
  kReplay = 6,
};

constexpr std::uint64_t StreamSeed(std::uint64_t run_seed,
                                   Stream stream) noexcept {
  return MixSeed(run_seed, static_cast<std::uint64_t>(stream));
}

}  // namespace hashcount

#endif  // HASHCOUNT_SEED_H_
