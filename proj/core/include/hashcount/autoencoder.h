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

// Dense autoencoder with a sigmoid binary-code layer, used to learn hash
// codes for observations.
//
// Architecture for layer_sizes = {n, h1, ..., hm} and code width D:
//
//   n -> h1 -> ... -> hm -> D (sigmoid code) -> hm -> ... -> h1 -> n
//
// Hidden layers use tanh; the output layer produces Bernoulli logits. During
// training, U(-a, a) noise is added to the code activations and the result
// is clamped to [1e-6, 1 - 1e-6] before the decoder.
//
// The training loss over a batch of N inputs is
//
//   L = (1/N) sum_n [ NLL(s_n) + (lambda / D) sum_i min{(1 - b_i)^2, b_i^2} ]
//
// where NLL is the element-wise Bernoulli negative log-likelihood of the
// input under the reconstruction and b is the noise-free code.
//
// Checkpoint layout (little-endian, version 1):
//   magic "HCAE", u32 version, f64 noise amplitude, f64 lambda,
//   u32 count of layer sizes, that many u64 sizes, u64 code width,
//   then per layer: u64 rows, u64 cols, rows*cols f64 weights (row-major),
//   rows f64 biases.

#ifndef HASHCOUNT_AUTOENCODER_H_
#define HASHCOUNT_AUTOENCODER_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hashcount/hashing.h"
#include "hashcount/seed.h"

namespace hashcount {

inline constexpr double kCodeClampLow = 1e-6;
inline constexpr double kCodeClampHigh = 1.0 - 1e-6;

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
};

// Parameters, or a gradient with the same shapes.
using LayerStack = std::vector<DenseLayer>;

class AutoencoderModel {
 public:
  // `layer_sizes` starts with the input width; the rest are encoder hidden
  // widths (mirrored by the decoder). Requires noise_amplitude > 1/4.
  static AutoencoderModel Create(std::vector<std::size_t> layer_sizes,
                                 std::size_t code_dim, double noise_amplitude,
                                 double lambda, std::uint64_t seed);

  std::size_t input_dim() const { return layer_sizes_.front(); }
  std::size_t code_dim() const { return code_dim_; }
  double noise_amplitude() const { return noise_amplitude_; }
  double lambda() const { return lambda_; }
  const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }

  // Index of the layer whose output is the code.
  std::size_t code_layer() const { return layer_sizes_.size() - 1; }

  LayerStack& layers() { return layers_; }
  const LayerStack& layers() const { return layers_; }
  std::size_t parameter_count() const;

  friend bool operator==(const AutoencoderModel& a, const AutoencoderModel& b);

 private:
  std::vector<std::size_t> layer_sizes_;
  std::size_t code_dim_ = 0;
  double noise_amplitude_ = 0.3;
  double lambda_ = 10.0;
  LayerStack layers_;

  friend AutoencoderModel LoadCheckpoint(std::istream& in);
};

// Column-per-sample batch of inputs with entries in [0, 1].
class TrainBatch {
 public:
  explicit TrainBatch(Eigen::MatrixXd inputs);
  static TrainBatch FromRows(std::span<const std::vector<double>> rows);

  const Eigen::MatrixXd& inputs() const { return inputs_; }
  std::size_t size() const { return static_cast<std::size_t>(inputs_.cols()); }

 private:
  Eigen::MatrixXd inputs_;
};

struct ForwardResult {
  Eigen::VectorXd code;            // b(x), noise-free
  Eigen::VectorXd reconstruction;  // p(x)
};

// Single-input forward pass. In train mode `rng` supplies the code noise.
ForwardResult Forward(const AutoencoderModel& model, std::span<const double> x,
                      Rng* rng, bool train_mode);

// Noise-free code b(x).
Eigen::VectorXd EncodeCode(const AutoencoderModel& model,
                           std::span<const double> x);

// Draws a code_dim x N matrix of U(-a, a) noise.
Eigen::MatrixXd SampleNoise(const AutoencoderModel& model, std::size_t n,
                            Rng& rng);

double Loss(const AutoencoderModel& model, const TrainBatch& batch,
            const Eigen::MatrixXd& noise);
double Loss(const AutoencoderModel& model, const TrainBatch& batch, Rng& rng);

// Per-unit binarization pressure min{(1 - b)^2, b^2}.
double BinarizationPenalty(double b);

struct LossGradient {
  double loss = 0.0;
  LayerStack gradient;
};

// Exact gradient of Loss at a fixed noise realization.
LossGradient Gradient(const AutoencoderModel& model, const TrainBatch& batch,
                      const Eigen::MatrixXd& noise);
LossGradient Gradient(const AutoencoderModel& model, const TrainBatch& batch,
                      Rng& rng);

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  LayerStack first_moment;
  LayerStack second_moment;
  std::uint64_t step = 0;
  AdamOptions options;
};

// Applies one bias-corrected Adam update with `gradient`.
void AdamUpdate(LayerStack& params, const LayerStack& gradient,
                AdamState& state, double learning_rate);

// One Adam step on the loss of `batch` at freshly drawn noise. Returns the
// loss before the update.
double TrainStep(AutoencoderModel& model, const TrainBatch& batch,
                 AdamState& state, double learning_rate, Rng& rng);

// Round-half-up of each activation.
BinaryCode Binarize(std::span<const double> code);

// SimHash of the rounded eval-mode code.
BinaryCode LearnedHash(const AutoencoderModel& model, std::span<const double> x,
                       const SimHasher& downsampler);

void SaveCheckpoint(const AutoencoderModel& model, std::ostream& out);
AutoencoderModel LoadCheckpoint(std::istream& in);

// Bounded FIFO of observations; the oldest entry is evicted first.
class ReplayPool {
 public:
  explicit ReplayPool(std::size_t capacity);

  void Add(std::vector<double> observation);
  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::vector<double>& at(std::size_t i) const { return buffer_.at(i); }

  // `n` draws with replacement.
  TrainBatch Sample(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::deque<std::vector<double>> buffer_;
};

}  // namespace hashcount

#endif  // HASHCOUNT_AUTOENCODER_H_
