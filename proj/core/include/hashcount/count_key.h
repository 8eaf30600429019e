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

#ifndef HASHCOUNT_COUNT_KEY_H_
#define HASHCOUNT_COUNT_KEY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hashcount/hashing.h"

namespace hashcount {

using ActionId = std::uint32_t;

// Canonical byte encoding of a code, optionally paired with an action.
//
// Layout (all integers little-endian):
//   tag      1 byte   0x01 binary code, 0x02 integer code, 0x03 raw reals
//   length   8 bytes  number of elements
//   payload           binary: bits packed LSB-first, 8 per byte
//                     integer: 8 bytes two's complement per element
//                     reals: 8 bytes IEEE-754 bit pattern per element
//   action   1 byte   0x00 none, or 0xA1 followed by a 4-byte action id
//
// The explicit length and action marker make the encoding injective over
// (code, action) pairs, and nothing in it depends on process state.
class CountKey {
 public:
  CountKey() = default;
  explicit CountKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }

  friend bool operator==(const CountKey&, const CountKey&) = default;
  friend auto operator<=>(const CountKey&, const CountKey&) = default;

 private:
  std::string bytes_;
};

CountKey EncodeKey(const BinaryCode& code,
                   std::optional<ActionId> action = std::nullopt);
CountKey EncodeKey(std::span<const std::int64_t> code,
                   std::optional<ActionId> action = std::nullopt);
CountKey EncodeKey(const StateCode& code,
                   std::optional<ActionId> action = std::nullopt);

// Exact key for a real-valued observation (bit patterns, so -0.0 != 0.0).
CountKey EncodeObservationKey(std::span<const double> observation);

// Folds key bytes to a 64-bit integer: FNV-1a over the bytes followed by
// the SplitMix64 finalizer. Count-Min rows reduce this value modulo their
// prime.
std::uint64_t FoldKey(std::string_view bytes) noexcept;

struct CountKeyHash {
  std::size_t operator()(const CountKey& key) const noexcept {
    return static_cast<std::size_t>(FoldKey(key.bytes()));
  }
};

}  // namespace hashcount

#endif  // HASHCOUNT_COUNT_KEY_H_
