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

#include "hashcount/count_key.h"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "hashcount/seed.h"
#include "test_util.h"

namespace hashcount {
namespace {

std::string Bytes(std::initializer_list<int> values) {
  std::string out;
  for (int v : values) out.push_back(static_cast<char>(v));
  return out;
}

TEST(CountKeyTest, BinaryLayout) {
  CountKey key = EncodeKey(BinaryCode({1, 0, 1}));
  EXPECT_EQ(key.bytes(), Bytes({0x01, 3, 0, 0, 0, 0, 0, 0, 0, 0x05, 0x00}));
}

TEST(CountKeyTest, BinaryLayoutWithAction) {
  CountKey key = EncodeKey(BinaryCode({0, 0, 0, 0, 0, 0, 0, 0, 1}), /*action=*/258);
  EXPECT_EQ(key.bytes(),
            Bytes({0x01, 9, 0, 0, 0, 0, 0, 0, 0, 0x00, 0x01, 0xA1, 0x02, 0x01, 0, 0}));
}

TEST(CountKeyTest, IntegerLayout) {
  const std::vector<std::int64_t> code = {-1, 2};
  CountKey key = EncodeKey(std::span<const std::int64_t>(code));
  EXPECT_EQ(key.bytes(), Bytes({0x02, 2, 0, 0, 0, 0, 0, 0, 0,
                                0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF,
                                2, 0, 0, 0, 0, 0, 0, 0, 0x00}));
}

TEST(CountKeyTest, DistinguishesLengthKindAndAction) {
  std::set<CountKey> keys;
  keys.insert(EncodeKey(BinaryCode({1, 0})));
  keys.insert(EncodeKey(BinaryCode({1, 0, 0})));
  keys.insert(EncodeKey(BinaryCode({1, 0}), 0));
  keys.insert(EncodeKey(BinaryCode({1, 0}), 1));
  keys.insert(EncodeKey(StateCode(IntCode{1, 0})));
  keys.insert(EncodeKey(StateCode(IntCode{1, 0}), 0));
  const std::vector<double> obs = {1.0, 0.0};
  keys.insert(EncodeObservationKey(obs));
  EXPECT_EQ(keys.size(), 7u);
}

TEST(CountKeyTest, InjectiveOnRandomCodes) {
  std::mt19937_64 rng(3);
  std::set<std::pair<std::vector<std::uint8_t>, int>> codes;
  std::set<CountKey> keys;
  for (int i = 0; i < 5000; ++i) {
    std::vector<std::uint8_t> bits(1 + rng() % 12);
    for (auto& b : bits) b = rng() & 1;
    const int action = static_cast<int>(rng() % 3) - 1;  // -1 means none
    codes.insert({bits, action});
    keys.insert(action < 0 ? EncodeKey(BinaryCode(bits))
                           : EncodeKey(BinaryCode(bits), static_cast<ActionId>(action)));
  }
  EXPECT_EQ(keys.size(), codes.size());
}

TEST(CountKeyTest, SignedZeroObservationsDiffer) {
  const std::vector<double> pos = {0.0};
  const std::vector<double> neg = {-0.0};
  EXPECT_NE(EncodeObservationKey(pos), EncodeObservationKey(neg));
}

TEST(CountKeyTest, EmptyCodeRejected) {
  EXPECT_EQ(CodeOf([] { EncodeKey(BinaryCode()); }), ErrorCode::kInvalidArgument);
}

TEST(FoldKeyTest, KnownVectors) {
  // Published SplitMix64 first output for state 0 and FNV-1a-64 of "a".
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(FoldKey(""), SplitMix64(0xcbf29ce484222325ULL));
  EXPECT_EQ(FoldKey("a"), SplitMix64(0xaf63dc4c8601ec8cULL));
}

TEST(SeedTest, StreamsAreDistinct) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t run = 0; run < 100; ++run) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
      seeds.insert(StreamSeed(run, static_cast<Stream>(s)));
    }
  }
  EXPECT_EQ(seeds.size(), 600u);
}

}  // namespace
}  // namespace hashcount
