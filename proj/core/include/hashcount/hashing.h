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

// Static hash functions that discretize observations into codes:
// SimHash random projection, BASS cell/bin image features, and feature-grid
// discretization.

#ifndef HASHCOUNT_HASHING_H_
#define HASHCOUNT_HASHING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace hashcount {

// Fixed-width bit vector. Bit i is 1 when the i-th projection is
// non-negative (the +1 sign), 0 otherwise.
class BinaryCode {
 public:
  BinaryCode() = default;
  explicit BinaryCode(std::vector<std::uint8_t> bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  // The code as a 0/1 real vector, e.g. to feed another projection.
  std::vector<double> AsReals() const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Integer-valued codes (BASS features, grid cells).
using IntCode = std::vector<std::int64_t>;

// Anything a hasher can emit; both alternatives are valid counting keys.
using StateCode = std::variant<BinaryCode, IntCode>;

// Angular locality-sensitive hash: sign pattern of a k x D standard-normal
// projection. The matrix is drawn once at construction from
// std::mt19937_64(seed) via std::normal_distribution and never mutated.
class SimHasher {
 public:
  SimHasher(std::size_t bits, std::size_t input_dim, std::uint64_t seed);

  // Hasher with an explicit row-major `bits` x `input_dim` matrix.
  static SimHasher FromMatrix(std::size_t bits, std::size_t input_dim,
                              std::vector<double> matrix);

  std::size_t bits() const { return bits_; }
  std::size_t input_dim() const { return input_dim_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> matrix() const { return matrix_; }

  // sgn(A x) with sgn(0) = +1.
  BinaryCode Hash(std::span<const double> x) const;

 private:
  SimHasher() = default;

  std::size_t bits_ = 0;
  std::size_t input_dim_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> matrix_;
};

struct BassConfig {
  int cell_size = 20;
  int bins = 20;
  int channels = 3;
};

// Height x width x channels intensity image, row-major with the channel
// index fastest.
struct Image {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<int> pixels;

  int at(int y, int x, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

// Cell-averaged, bin-quantized image features:
//   feature(i, j, z) = floor(B * sum_{cell(i,j)} I(x, y, z) / (255 C^2)).
// Output shape is (H/C) x (W/C) x channels, flattened row-major. Values lie
// in [0, B]; B is produced only by a fully saturated cell.
IntCode BassFeatures(const Image& image, const BassConfig& config);

struct GridHashConfig {
  std::vector<double> grid_sizes;
};

// Per-coordinate cell index floor(x_i / s_i), using mathematical floor
// (the largest c with c * s_i <= x_i, products evaluated in double).
IntCode GridHash(std::span<const double> x, const GridHashConfig& config);

}  // namespace hashcount

#endif  // HASHCOUNT_HASHING_H_
