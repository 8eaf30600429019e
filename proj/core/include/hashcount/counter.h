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

// Visit-count storage: an exact hash table and a Count-Min sketch (a
// counting Bloom filter that answers with the minimum over its rows).
//
// Counters are single-writer. One experiment owns one counter; it may be
// moved to another thread but never shared mutably.
//
// Snapshot layout (little-endian, version 1):
//   magic        4 bytes  "HCNT"
//   version      u32      1
//   backend      u8       0 exact, 1 count-min
//   novel_keys   u64
//   exact:       u64 entry count, then per entry in ascending key order:
//                u64 key length, key bytes, u64 count
//   count-min:   u32 row count l, l x u64 primes, then each row's p^j
//                cells as u64

#ifndef HASHCOUNT_COUNTER_H_
#define HASHCOUNT_COUNTER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "hashcount/count_key.h"

namespace hashcount {

enum class CounterBackend : std::uint8_t { kExact = 0, kCountMin = 1 };

// Six primes near 10^6 (the "6 M" table).
inline constexpr std::array<std::uint64_t, 6> kSixMillionPrimes = {
    999931, 999953, 999959, 999961, 999979, 999983};

// Six primes near 10^3, small enough that collisions are observable.
inline constexpr std::array<std::uint64_t, 6> kSmallPrimes = {
    991, 997, 1009, 1013, 1019, 1021};

class Counter {
 public:
  virtual ~Counter() = default;

  virtual CounterBackend backend() const = 0;

  // Adds one visit to `key` and returns the count reported afterwards.
  virtual std::uint64_t Increment(const CountKey& key) = 0;
  virtual std::uint64_t Query(const CountKey& key) const = 0;

  // Approximate heap footprint of the count storage.
  virtual std::size_t MemoryBytes() const = 0;

  virtual std::unique_ptr<Counter> Clone() const = 0;
  virtual void Serialize(std::ostream& out) const = 0;

  // Number of increments that found the key at count zero. For the exact
  // backend this is the number of distinct keys; for the sketch it is a
  // lower bound, since over-counted keys never look new.
  std::uint64_t novel_keys() const { return novel_keys_; }

 protected:
  std::uint64_t novel_keys_ = 0;
};

class ExactCounter final : public Counter {
 public:
  CounterBackend backend() const override { return CounterBackend::kExact; }
  std::uint64_t Increment(const CountKey& key) override;
  std::uint64_t Query(const CountKey& key) const override;
  std::size_t MemoryBytes() const override;
  std::unique_ptr<Counter> Clone() const override;
  void Serialize(std::ostream& out) const override;

  std::size_t size() const { return table_.size(); }

 private:
  friend std::unique_ptr<Counter> DeserializeCounter(std::istream& in);

  std::unordered_map<CountKey, std::uint64_t, CountKeyHash> table_;
};

class CountMinSketch final : public Counter {
 public:
  // One row of `p` cells per prime; the primes must be distinct primes.
  explicit CountMinSketch(std::span<const std::uint64_t> primes);

  CounterBackend backend() const override { return CounterBackend::kCountMin; }
  std::uint64_t Increment(const CountKey& key) override;
  std::uint64_t Query(const CountKey& key) const override;
  std::size_t MemoryBytes() const override;
  std::unique_ptr<Counter> Clone() const override;
  void Serialize(std::ostream& out) const override;

  // Increment/query by an already-folded 64-bit key; row j uses
  // folded mod p^j.
  std::uint64_t IncrementFolded(std::uint64_t folded);
  std::uint64_t QueryFolded(std::uint64_t folded) const;

  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t rows() const { return primes_.size(); }

 private:
  friend std::unique_ptr<Counter> DeserializeCounter(std::istream& in);

  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<std::uint64_t>> cells_;
};

std::unique_ptr<Counter> DeserializeCounter(std::istream& in);

bool IsPrime(std::uint64_t n);

}  // namespace hashcount

#endif  // HASHCOUNT_COUNTER_H_
