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

#include <bit>
#include <type_traits>

#include "hashcount/error.h"
#include "hashcount/seed.h"

namespace hashcount {
namespace {

constexpr char kTagBinary = 0x01;
constexpr char kTagInteger = 0x02;
constexpr char kTagReals = 0x03;
constexpr char kNoAction = 0x00;
constexpr char kHasAction = static_cast<char>(0xA1);

template <typename T>
void PutLittleEndian(std::string& out, T value) {
  auto bits = static_cast<std::make_unsigned_t<T>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(bits & 0xFF));
    bits = static_cast<decltype(bits)>(bits >> 8);
  }
}

void PutAction(std::string& out, std::optional<ActionId> action) {
  if (action) {
    out.push_back(kHasAction);
    PutLittleEndian<std::uint32_t>(out, *action);
  } else {
    out.push_back(kNoAction);
  }
}

void RequireNonEmpty(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty code");
}

}  // namespace

CountKey EncodeKey(const BinaryCode& code, std::optional<ActionId> action) {
  RequireNonEmpty(code.size());
  std::string out;
  out.reserve(1 + 8 + (code.size() + 7) / 8 + 5);
  out.push_back(kTagBinary);
  PutLittleEndian<std::uint64_t>(out, code.size());
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    byte |= static_cast<std::uint8_t>(code[i] << (i % 8));
    if (i % 8 == 7) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (code.size() % 8 != 0) out.push_back(static_cast<char>(byte));
  PutAction(out, action);
  return CountKey(std::move(out));
}

CountKey EncodeKey(std::span<const std::int64_t> code,
                   std::optional<ActionId> action) {
  RequireNonEmpty(code.size());
  std::string out;
  out.reserve(1 + 8 + 8 * code.size() + 5);
  out.push_back(kTagInteger);
  PutLittleEndian<std::uint64_t>(out, code.size());
  for (std::int64_t v : code) PutLittleEndian<std::int64_t>(out, v);
  PutAction(out, action);
  return CountKey(std::move(out));
}

CountKey EncodeKey(const StateCode& code, std::optional<ActionId> action) {
  return std::visit(
      [&](const auto& c) -> CountKey {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, BinaryCode>) {
          return EncodeKey(c, action);
        } else {
          return EncodeKey(std::span<const std::int64_t>(c), action);
        }
      },
      code);
}

CountKey EncodeObservationKey(std::span<const double> observation) {
  RequireNonEmpty(observation.size());
  std::string out;
  out.reserve(1 + 8 + 8 * observation.size() + 1);
  out.push_back(kTagReals);
  PutLittleEndian<std::uint64_t>(out, observation.size());
  for (double v : observation) {
    PutLittleEndian<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  out.push_back(kNoAction);
  return CountKey(std::move(out));
}

std::uint64_t FoldKey(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(h);
}

}  // namespace hashcount
