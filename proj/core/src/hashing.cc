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

#include "hashcount/hashing.h"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "hashcount/error.h"
#include "hashcount/seed.h"

namespace hashcount {
namespace {

void RequireFinite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput, "input contains a non-finite value");
    }
  }
}

}  // namespace

BinaryCode::BinaryCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::vector<double> BinaryCode::AsReals() const {
  return std::vector<double>(bits_.begin(), bits_.end());
}

SimHasher::SimHasher(std::size_t bits, std::size_t input_dim,
                     std::uint64_t seed)
    : bits_(bits), input_dim_(input_dim), seed_(seed) {
  if (bits == 0 || input_dim == 0) {
    throw Error(ErrorCode::kInvalidDimension,
                "SimHash needs k >= 1 and D >= 1 (got k=" +
                    std::to_string(bits) + ", D=" + std::to_string(input_dim) +
                    ")");
  }
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  matrix_.resize(bits * input_dim);
  for (double& a : matrix_) a = normal(rng);
}

SimHasher SimHasher::FromMatrix(std::size_t bits, std::size_t input_dim,
                                std::vector<double> matrix) {
  if (bits == 0 || input_dim == 0) {
    throw Error(ErrorCode::kInvalidDimension, "SimHash needs k >= 1 and D >= 1");
  }
  if (matrix.size() != bits * input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection matrix has " + std::to_string(matrix.size()) +
                    " entries, expected " + std::to_string(bits * input_dim));
  }
  RequireFinite(matrix);
  SimHasher h;
  h.bits_ = bits;
  h.input_dim_ = input_dim;
  h.matrix_ = std::move(matrix);
  return h;
}

BinaryCode SimHasher::Hash(std::span<const double> x) const {
  if (x.size() != input_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "SimHash input has length " + std::to_string(x.size()) +
                    ", expected " + std::to_string(input_dim_));
  }
  RequireFinite(x);
  std::vector<std::uint8_t> bits(bits_);
  const double* row = matrix_.data();
  for (std::size_t i = 0; i < bits_; ++i, row += input_dim_) {
    double dot = 0.0;
    for (std::size_t j = 0; j < input_dim_; ++j) dot += row[j] * x[j];
    bits[i] = dot >= 0.0 ? 1 : 0;
  }
  return BinaryCode(std::move(bits));
}

IntCode BassFeatures(const Image& image, const BassConfig& config) {
  const int c = config.cell_size;
  if (c < 1 || config.bins < 1 || config.channels < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "BASS needs cell_size >= 1, bins >= 1, channels >= 1");
  }
  if (image.channels != config.channels) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image has " + std::to_string(image.channels) +
                    " channels, config expects " +
                    std::to_string(config.channels));
  }
  if (image.height <= 0 || image.width <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.height) *
                                 image.width * image.channels) {
    throw Error(ErrorCode::kDimensionMismatch, "image buffer does not match its shape");
  }
  if (image.height % c != 0 || image.width % c != 0) {
    throw Error(ErrorCode::kShapeNotDivisible,
                std::to_string(image.height) + "x" + std::to_string(image.width) +
                    " image is not a multiple of cell size " + std::to_string(c));
  }
  for (int v : image.pixels) {
    if (v < 0 || v > 255) {
      throw Error(ErrorCode::kIntensityOutOfRange,
                  "pixel value " + std::to_string(v) + " outside [0, 255]");
    }
  }

  const int rows = image.height / c;
  const int cols = image.width / c;
  const int channels = image.channels;
  const std::int64_t denom = 255LL * c * c;
  IntCode out(static_cast<std::size_t>(rows) * cols * channels);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int z = 0; z < channels; ++z) {
        std::int64_t sum = 0;
        for (int y = i * c; y < (i + 1) * c; ++y) {
          for (int x = j * c; x < (j + 1) * c; ++x) sum += image.at(y, x, z);
        }
        // Integer arithmetic keeps the floor exact; both operands are >= 0.
        out[(static_cast<std::size_t>(i) * cols + j) * channels + z] =
            (config.bins * sum) / denom;
      }
    }
  }
  return out;
}

IntCode GridHash(std::span<const double> x, const GridHashConfig& config) {
  if (x.size() != config.grid_sizes.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "grid hash input has length " + std::to_string(x.size()) +
                    ", config has " + std::to_string(config.grid_sizes.size()) +
                    " grid sizes");
  }
  for (double s : config.grid_sizes) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kNonPositiveGridSize, "grid sizes must be finite and > 0");
    }
  }
  RequireFinite(x);
  IntCode out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Largest c with c * s <= x as evaluated in floating point, so that a
    // cell's own corner s * c hashes back to c despite quotient rounding.
    const double s = config.grid_sizes[i];
    double c = std::floor(x[i] / s);
    if (c * s > x[i]) {
      c -= 1.0;
    } else if ((c + 1.0) * s <= x[i]) {
      c += 1.0;
    }
    out[i] = static_cast<std::int64_t>(c);
  }
  return out;
}

}  // namespace hashcount
