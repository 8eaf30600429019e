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

#include "hashcount/autoencoder.h"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "binary_io.h"
#include "hashcount/error.h"

namespace hashcount {
namespace {

constexpr std::string_view kMagic = "HCAE";
constexpr std::uint32_t kVersion = 1;

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double PenaltySlope(double b) {
  if (b < 0.5) return 2.0 * b;
  if (b > 0.5) return -2.0 * (1.0 - b);
  return 0.0;
}

// Activations kept for back-propagation. inputs[l] is the input of layer l;
// for the first decoder layer that is the (possibly noisy) clamped code.
struct Trace {
  std::vector<Eigen::MatrixXd> inputs;
  Eigen::MatrixXd code;        // noise-free b
  Eigen::MatrixXd code_mask;   // 1 where the clamp is inactive
  Eigen::MatrixXd logits;
};

Trace RunForward(const AutoencoderModel& model, const Eigen::MatrixXd& x,
                 const Eigen::MatrixXd* noise) {
  const auto& layers = model.layers();
  const std::size_t code_layer = model.code_layer();
  Trace t;
  t.inputs.reserve(layers.size());
  Eigen::MatrixXd a = x;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    t.inputs.push_back(a);
    Eigen::MatrixXd z = layers[l].weights * a;
    z.colwise() += layers[l].bias;
    if (l == code_layer) {
      t.code = z.unaryExpr([](double v) { return Sigmoid(v); });
      if (noise != nullptr) {
        Eigen::MatrixXd noisy = t.code + *noise;
        t.code_mask = noisy.unaryExpr([](double v) {
          return (v >= kCodeClampLow && v <= kCodeClampHigh) ? 1.0 : 0.0;
        });
        a = noisy.cwiseMax(kCodeClampLow).cwiseMin(kCodeClampHigh);
      } else {
        t.code_mask = Eigen::MatrixXd::Ones(t.code.rows(), t.code.cols());
        a = t.code;
      }
    } else if (l + 1 == layers.size()) {
      t.logits = std::move(z);
    } else {
      a = z.array().tanh().matrix();
    }
  }
  return t;
}

double TraceLoss(const AutoencoderModel& model, const Eigen::MatrixXd& x,
                 const Trace& t) {
  const double n = static_cast<double>(x.cols());
  double nll = 0.0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double z = t.logits(r, c);
      nll += Softplus(z) - x(r, c) * z;
    }
  }
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < t.code.size(); ++i) {
    penalty += BinarizationPenalty(t.code.data()[i]);
  }
  const double scale = model.lambda() / static_cast<double>(model.code_dim());
  return (nll + scale * penalty) / n;
}

void CheckNoise(const AutoencoderModel& model, const TrainBatch& batch,
                const Eigen::MatrixXd& noise) {
  if (noise.rows() != static_cast<Eigen::Index>(model.code_dim()) ||
      noise.cols() != static_cast<Eigen::Index>(batch.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "noise matrix must be code_dim x N");
  }
}

void CheckBatch(const AutoencoderModel& model, const TrainBatch& batch) {
  if (batch.size() == 0) throw Error(ErrorCode::kEmptyBatch, "training batch is empty");
  if (batch.inputs().rows() != static_cast<Eigen::Index>(model.input_dim())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "batch rows " + std::to_string(batch.inputs().rows()) +
                    " != model input width " + std::to_string(model.input_dim()));
  }
}

void CheckInput(const AutoencoderModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input length " + std::to_string(x.size()) + " != " +
                    std::to_string(model.input_dim()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "input is not finite");
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "autoencoder inputs must lie in [0, 1]");
    }
  }
}

LayerStack ZerosLike(const LayerStack& params) {
  LayerStack out;
  out.reserve(params.size());
  for (const auto& layer : params) {
    out.push_back({Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()),
                   Eigen::VectorXd::Zero(layer.bias.size())});
  }
  return out;
}

}  // namespace

AutoencoderModel AutoencoderModel::Create(std::vector<std::size_t> layer_sizes,
                                          std::size_t code_dim,
                                          double noise_amplitude, double lambda,
                                          std::uint64_t seed) {
  if (!(noise_amplitude > 0.25)) {
    throw Error(ErrorCode::kNoiseTooSmall,
                "noise amplitude must exceed 1/4, got " + std::to_string(noise_amplitude));
  }
  if (code_dim == 0 || layer_sizes.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "autoencoder needs an input width and code_dim >= 1");
  }
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw Error(ErrorCode::kInvalidDimension, "layer widths must be >= 1");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }

  AutoencoderModel m;
  m.layer_sizes_ = std::move(layer_sizes);
  m.code_dim_ = code_dim;
  m.noise_amplitude_ = noise_amplitude;
  m.lambda_ = lambda;

  // Widths along the full encoder/decoder path.
  std::vector<std::size_t> path(m.layer_sizes_.begin(), m.layer_sizes_.end());
  path.push_back(code_dim);
  path.insert(path.end(), m.layer_sizes_.rbegin(), m.layer_sizes_.rend());

  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < path.size(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(path[l]);
    const auto fan_out = static_cast<Eigen::Index>(path[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-limit, limit);
    DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd::Zero(fan_out)};
    for (Eigen::Index r = 0; r < fan_out; ++r) {
      for (Eigen::Index c = 0; c < fan_in; ++c) layer.weights(r, c) = uniform(rng);
    }
    m.layers_.push_back(std::move(layer));
  }
  return m;
}

std::size_t AutoencoderModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  }
  return n;
}

bool operator==(const AutoencoderModel& a, const AutoencoderModel& b) {
  if (a.layer_sizes_ != b.layer_sizes_ || a.code_dim_ != b.code_dim_ ||
      a.noise_amplitude_ != b.noise_amplitude_ || a.lambda_ != b.lambda_ ||
      a.layers_.size() != b.layers_.size()) {
    return false;
  }
  for (std::size_t l = 0; l < a.layers_.size(); ++l) {
    if (a.layers_[l].weights != b.layers_[l].weights ||
        a.layers_[l].bias != b.layers_[l].bias) {
      return false;
    }
  }
  return true;
}

TrainBatch::TrainBatch(Eigen::MatrixXd inputs) : inputs_(std::move(inputs)) {
  for (Eigen::Index i = 0; i < inputs_.size(); ++i) {
    const double v = inputs_.data()[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "batch entry is not finite");
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "batch entries must lie in [0, 1]");
    }
  }
}

TrainBatch TrainBatch::FromRows(std::span<const std::vector<double>> rows) {
  if (rows.empty()) return TrainBatch(Eigen::MatrixXd(0, 0));
  const auto dim = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (static_cast<Eigen::Index>(rows[c].size()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "batch rows differ in length");
    }
    for (Eigen::Index r = 0; r < dim; ++r) m(r, static_cast<Eigen::Index>(c)) = rows[c][r];
  }
  return TrainBatch(std::move(m));
}

ForwardResult Forward(const AutoencoderModel& model, std::span<const double> x,
                      Rng* rng, bool train_mode) {
  CheckInput(model, x);
  Eigen::MatrixXd input =
      Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::MatrixXd noise;
  if (train_mode) {
    if (rng == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "train-mode forward needs a generator");
    }
    noise = SampleNoise(model, 1, *rng);
  }
  Trace t = RunForward(model, input, train_mode ? &noise : nullptr);
  ForwardResult out;
  out.code = t.code.col(0);
  out.reconstruction = t.logits.col(0).unaryExpr([](double v) { return Sigmoid(v); });
  return out;
}

Eigen::VectorXd EncodeCode(const AutoencoderModel& model,
                           std::span<const double> x) {
  CheckInput(model, x);
  Eigen::VectorXd a =
      Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const auto& layers = model.layers();
  for (std::size_t l = 0; l < model.code_layer(); ++l) {
    a = (layers[l].weights * a + layers[l].bias).array().tanh().matrix();
  }
  const auto& code = layers[model.code_layer()];
  return (code.weights * a + code.bias).unaryExpr([](double v) { return Sigmoid(v); });
}

Eigen::MatrixXd SampleNoise(const AutoencoderModel& model, std::size_t n,
                            Rng& rng) {
  const double amp = model.noise_amplitude();
  std::uniform_real_distribution<double> uniform(-amp, amp);
  Eigen::MatrixXd noise(static_cast<Eigen::Index>(model.code_dim()),
                        static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < noise.cols(); ++c) {
    for (Eigen::Index r = 0; r < noise.rows(); ++r) noise(r, c) = uniform(rng);
  }
  return noise;
}

double BinarizationPenalty(double b) {
  return std::min((1.0 - b) * (1.0 - b), b * b);
}

double Loss(const AutoencoderModel& model, const TrainBatch& batch,
            const Eigen::MatrixXd& noise) {
  CheckBatch(model, batch);
  CheckNoise(model, batch, noise);
  return TraceLoss(model, batch.inputs(), RunForward(model, batch.inputs(), &noise));
}

double Loss(const AutoencoderModel& model, const TrainBatch& batch, Rng& rng) {
  CheckBatch(model, batch);
  return Loss(model, batch, SampleNoise(model, batch.size(), rng));
}

LossGradient Gradient(const AutoencoderModel& model, const TrainBatch& batch,
                      const Eigen::MatrixXd& noise) {
  CheckBatch(model, batch);
  CheckNoise(model, batch, noise);
  const Eigen::MatrixXd& x = batch.inputs();
  const auto& layers = model.layers();
  const std::size_t code_layer = model.code_layer();
  const double n = static_cast<double>(batch.size());

  Trace t = RunForward(model, x, &noise);
  LossGradient out;
  out.loss = TraceLoss(model, x, t);
  out.gradient = ZerosLike(layers);

  // dL/dlogits of the Bernoulli NLL is (p - x) / N.
  Eigen::MatrixXd delta =
      (t.logits.unaryExpr([](double v) { return Sigmoid(v); }) - x) / n;

  for (std::size_t l = layers.size(); l-- > 0;) {
    out.gradient[l].weights = delta * t.inputs[l].transpose();
    out.gradient[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = layers[l].weights.transpose() * delta;
    if (l == code_layer + 1) {
      // Through the clamp into the code, plus the binarization pressure,
      // then through the sigmoid.
      const double scale = model.lambda() / (static_cast<double>(model.code_dim()) * n);
      Eigen::MatrixXd d_code = upstream.cwiseProduct(t.code_mask) +
                               t.code.unaryExpr([&](double b) { return scale * PenaltySlope(b); });
      delta = d_code.cwiseProduct(
          t.code.unaryExpr([](double b) { return b * (1.0 - b); }));
    } else {
      // tanh'(z) = 1 - tanh(z)^2, and inputs[l] holds tanh(z) of layer l-1.
      delta = upstream.cwiseProduct(
          (1.0 - t.inputs[l].array().square()).matrix());
    }
  }
  return out;
}

LossGradient Gradient(const AutoencoderModel& model, const TrainBatch& batch,
                      Rng& rng) {
  CheckBatch(model, batch);
  return Gradient(model, batch, SampleNoise(model, batch.size(), rng));
}

void AdamUpdate(LayerStack& params, const LayerStack& gradient,
                AdamState& state, double learning_rate) {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "learning rate must be finite and > 0");
  }
  if (gradient.size() != params.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient does not match parameters");
  }
  if (state.first_moment.empty()) {
    state.first_moment = ZerosLike(params);
    state.second_moment = ZerosLike(params);
  }
  const AdamOptions& o = state.options;
  ++state.step;
  const double correction1 = 1.0 - std::pow(o.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(o.beta2, static_cast<double>(state.step));

  auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g.cwiseProduct(g);
    p.array() -= learning_rate * (m.array() / correction1) /
                 ((v.array() / correction2).sqrt() + o.epsilon);
  };
  for (std::size_t l = 0; l < params.size(); ++l) {
    update(params[l].weights, gradient[l].weights, state.first_moment[l].weights,
           state.second_moment[l].weights);
    update(params[l].bias, gradient[l].bias, state.first_moment[l].bias,
           state.second_moment[l].bias);
  }
}

double TrainStep(AutoencoderModel& model, const TrainBatch& batch,
                 AdamState& state, double learning_rate, Rng& rng) {
  LossGradient lg = Gradient(model, batch, rng);
  AdamUpdate(model.layers(), lg.gradient, state, learning_rate);
  return lg.loss;
}

BinaryCode Binarize(std::span<const double> code) {
  std::vector<std::uint8_t> bits(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) bits[i] = code[i] >= 0.5 ? 1 : 0;
  return BinaryCode(std::move(bits));
}

BinaryCode LearnedHash(const AutoencoderModel& model, std::span<const double> x,
                       const SimHasher& downsampler) {
  if (downsampler.input_dim() != model.code_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "downsampler expects " + std::to_string(downsampler.input_dim()) +
                    " inputs but the code has " + std::to_string(model.code_dim()));
  }
  const Eigen::VectorXd code = EncodeCode(model, x);
  const BinaryCode rounded =
      Binarize(std::span<const double>(code.data(), static_cast<std::size_t>(code.size())));
  return downsampler.Hash(rounded.AsReals());
}

void SaveCheckpoint(const AutoencoderModel& model, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  internal::WriteLe<std::uint32_t>(out, kVersion);
  internal::WriteF64(out, model.noise_amplitude());
  internal::WriteF64(out, model.lambda());
  internal::WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(model.layer_sizes().size()));
  for (std::size_t s : model.layer_sizes()) internal::WriteLe<std::uint64_t>(out, s);
  internal::WriteLe<std::uint64_t>(out, model.code_dim());
  for (const auto& layer : model.layers()) {
    internal::WriteLe<std::uint64_t>(out, static_cast<std::uint64_t>(layer.weights.rows()));
    internal::WriteLe<std::uint64_t>(out, static_cast<std::uint64_t>(layer.weights.cols()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        internal::WriteF64(out, layer.weights(r, c));
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) internal::WriteF64(out, layer.bias(r));
  }
}

AutoencoderModel LoadCheckpoint(std::istream& in) {
  internal::ExpectMagic(in, kMagic);
  const auto version = internal::ReadLe<std::uint32_t>(in);
  if (version != kVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported autoencoder checkpoint version " + std::to_string(version));
  }
  const double noise = internal::ReadF64(in);
  const double lambda = internal::ReadF64(in);
  const auto n_sizes = internal::ReadLe<std::uint32_t>(in);
  if (n_sizes == 0 || n_sizes > 64) throw Error(ErrorCode::kFormat, "layer count out of range");
  std::vector<std::size_t> sizes(n_sizes);
  for (auto& s : sizes) s = internal::ReadLe<std::uint64_t>(in);
  const auto code_dim = internal::ReadLe<std::uint64_t>(in);

  AutoencoderModel m = AutoencoderModel::Create(sizes, code_dim, noise, lambda, 0);
  for (auto& layer : m.layers_) {
    const auto rows = internal::ReadLe<std::uint64_t>(in);
    const auto cols = internal::ReadLe<std::uint64_t>(in);
    if (rows != static_cast<std::uint64_t>(layer.weights.rows()) ||
        cols != static_cast<std::uint64_t>(layer.weights.cols())) {
      throw Error(ErrorCode::kFormat, "layer shape does not match the declared sizes");
    }
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = internal::ReadF64(in);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = internal::ReadF64(in);
  }
  return m;
}

ReplayPool::ReplayPool(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "replay capacity must be >= 1");
}

void ReplayPool::Add(std::vector<double> observation) {
  if (buffer_.size() == capacity_) buffer_.pop_front();
  buffer_.push_back(std::move(observation));
}

TrainBatch ReplayPool::Sample(std::size_t n, Rng& rng) const {
  if (buffer_.empty() || n == 0) {
    throw Error(ErrorCode::kEmptyBatch, "cannot sample from an empty replay pool");
  }
  std::uniform_int_distribution<std::size_t> pick(0, buffer_.size() - 1);
  const auto dim = static_cast<Eigen::Index>(buffer_.front().size());
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const auto& row = buffer_[pick(rng)];
    for (Eigen::Index r = 0; r < dim; ++r) m(r, static_cast<Eigen::Index>(c)) = row[r];
  }
  return TrainBatch(std::move(m));
}

}  // namespace hashcount
