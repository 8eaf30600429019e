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

#include "hashcount/counter.h"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "binary_io.h"
#include "hashcount/error.h"

namespace hashcount {
namespace {

constexpr std::string_view kMagic = "HCNT";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kMaxCount = std::numeric_limits<std::uint64_t>::max();

// Guards against absurd sizes in corrupt snapshots.
constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 32;

void WriteHeader(std::ostream& out, CounterBackend backend,
                 std::uint64_t novel) {
  out.write(kMagic.data(), kMagic.size());
  internal::WriteLe<std::uint32_t>(out, kVersion);
  internal::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(backend));
  internal::WriteLe<std::uint64_t>(out, novel);
}

}  // namespace

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t ExactCounter::Increment(const CountKey& key) {
  auto [it, inserted] = table_.try_emplace(key, 0);
  if (it->second == kMaxCount) {
    throw Error(ErrorCode::kCountOverflow, "exact counter cell saturated");
  }
  if (it->second == 0) ++novel_keys_;
  return ++it->second;
}

std::uint64_t ExactCounter::Query(const CountKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? 0 : it->second;
}

std::size_t ExactCounter::MemoryBytes() const {
  std::size_t bytes = table_.bucket_count() * sizeof(void*);
  for (const auto& [key, count] : table_) {
    bytes += sizeof(key) + key.bytes().capacity() + sizeof(count) +
             2 * sizeof(void*);
  }
  return bytes;
}

std::unique_ptr<Counter> ExactCounter::Clone() const {
  return std::make_unique<ExactCounter>(*this);
}

void ExactCounter::Serialize(std::ostream& out) const {
  WriteHeader(out, backend(), novel_keys_);
  std::vector<const std::pair<const CountKey, std::uint64_t>*> entries;
  entries.reserve(table_.size());
  for (const auto& entry : table_) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](auto* a, auto* b) { return a->first < b->first; });
  internal::WriteLe<std::uint64_t>(out, entries.size());
  for (const auto* entry : entries) {
    const std::string& bytes = entry->first.bytes();
    internal::WriteLe<std::uint64_t>(out, bytes.size());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    internal::WriteLe<std::uint64_t>(out, entry->second);
  }
}

CountMinSketch::CountMinSketch(std::span<const std::uint64_t> primes)
    : primes_(primes.begin(), primes.end()) {
  if (primes_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "count-min sketch needs at least one prime");
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t p : primes_) {
    if (p > kMaxPrime || !IsPrime(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::to_string(p) + " is not a usable prime row size");
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate prime " + std::to_string(p));
    }
  }
  cells_.reserve(primes_.size());
  for (std::uint64_t p : primes_) cells_.emplace_back(p, 0);
}

std::uint64_t CountMinSketch::IncrementFolded(std::uint64_t folded) {
  std::uint64_t before = kMaxCount;
  for (std::size_t j = 0; j < primes_.size(); ++j) {
    const std::uint64_t cell = cells_[j][folded % primes_[j]];
    if (cell == kMaxCount) {
      throw Error(ErrorCode::kCountOverflow,
                  "count-min row " + std::to_string(j) + " cell saturated");
    }
    before = std::min(before, cell);
  }
  std::uint64_t after = kMaxCount;
  for (std::size_t j = 0; j < primes_.size(); ++j) {
    after = std::min(after, ++cells_[j][folded % primes_[j]]);
  }
  if (before == 0) ++novel_keys_;
  return after;
}

std::uint64_t CountMinSketch::QueryFolded(std::uint64_t folded) const {
  std::uint64_t result = kMaxCount;
  for (std::size_t j = 0; j < primes_.size(); ++j) {
    result = std::min(result, cells_[j][folded % primes_[j]]);
  }
  return result;
}

std::uint64_t CountMinSketch::Increment(const CountKey& key) {
  return IncrementFolded(FoldKey(key.bytes()));
}

std::uint64_t CountMinSketch::Query(const CountKey& key) const {
  return QueryFolded(FoldKey(key.bytes()));
}

std::size_t CountMinSketch::MemoryBytes() const {
  std::size_t bytes = 0;
  for (const auto& row : cells_) bytes += row.size() * sizeof(std::uint64_t);
  return bytes;
}

std::unique_ptr<Counter> CountMinSketch::Clone() const {
  return std::make_unique<CountMinSketch>(*this);
}

void CountMinSketch::Serialize(std::ostream& out) const {
  WriteHeader(out, backend(), novel_keys_);
  internal::WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(primes_.size()));
  for (std::uint64_t p : primes_) internal::WriteLe<std::uint64_t>(out, p);
  for (const auto& row : cells_) {
    for (std::uint64_t cell : row) internal::WriteLe<std::uint64_t>(out, cell);
  }
}

std::unique_ptr<Counter> DeserializeCounter(std::istream& in) {
  internal::ExpectMagic(in, kMagic);
  const auto version = internal::ReadLe<std::uint32_t>(in);
  if (version != kVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported counter snapshot version " + std::to_string(version));
  }
  const auto backend = internal::ReadLe<std::uint8_t>(in);
  const auto novel = internal::ReadLe<std::uint64_t>(in);
  if (backend == static_cast<std::uint8_t>(CounterBackend::kExact)) {
    auto counter = std::make_unique<ExactCounter>();
    const auto n = internal::ReadLe<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto len = internal::ReadLe<std::uint64_t>(in);
      if (len > (std::uint64_t{1} << 30)) {
        throw Error(ErrorCode::kFormat, "key length out of range");
      }
      std::string bytes(len, '\0');
      if (!in.read(bytes.data(), static_cast<std::streamsize>(len))) {
        throw Error(ErrorCode::kFormat, "unexpected end of snapshot");
      }
      counter->table_.emplace(CountKey(std::move(bytes)),
                              internal::ReadLe<std::uint64_t>(in));
    }
    counter->novel_keys_ = novel;
    return counter;
  }
  if (backend == static_cast<std::uint8_t>(CounterBackend::kCountMin)) {
    const auto rows = internal::ReadLe<std::uint32_t>(in);
    if (rows == 0 || rows > 64) {
      throw Error(ErrorCode::kFormat, "row count out of range");
    }
    std::vector<std::uint64_t> primes(rows);
    for (auto& p : primes) p = internal::ReadLe<std::uint64_t>(in);
    auto sketch = std::make_unique<CountMinSketch>(primes);
    for (auto& row : sketch->cells_) {
      for (auto& cell : row) cell = internal::ReadLe<std::uint64_t>(in);
    }
    sketch->novel_keys_ = novel;
    return sketch;
  }
  throw Error(ErrorCode::kFormat, "unknown counter backend tag " + std::to_string(backend));
}

}  // namespace hashcount
