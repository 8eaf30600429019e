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

// Little-endian scalar I/O shared by the snapshot formats.

#ifndef HASHCOUNT_SRC_BINARY_IO_H_
#define HASHCOUNT_SRC_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "hashcount/error.h"

namespace hashcount::internal {

template <typename T>
void WriteLe(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>(value & 0xFF);
    value = static_cast<T>(value >> 8);
  }
  out.write(buf, sizeof(T));
}

inline void WriteF64(std::ostream& out, double value) {
  WriteLe<std::uint64_t>(out, std::bit_cast<std::uint64_t>(value));
}

template <typename T>
T ReadLe(std::istream& in) {
  static_assert(std::is_unsigned_v<T>);
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw Error(ErrorCode::kFormat, "unexpected end of snapshot");
  }
  T value = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    value = static_cast<T>((value << 8) | buf[i]);
  }
  return value;
}

inline double ReadF64(std::istream& in) {
  return std::bit_cast<double>(ReadLe<std::uint64_t>(in));
}

inline void ExpectMagic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  if (!in.read(got.data(), static_cast<std::streamsize>(got.size())) ||
      got != magic) {
    throw Error(ErrorCode::kFormat,
                "bad magic, expected \"" + std::string(magic) + "\"");
  }
}

}  // namespace hashcount::internal

#endif  // HASHCOUNT_SRC_BINARY_IO_H_
