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

#include "hashcount/pipeline.h"

#include <cmath>
#include <string>
#include <utility>

#include "hashcount/error.h"

namespace hashcount {

SimHashStateHasher::SimHashStateHasher(SimHasher hasher, double input_scale)
    : hasher_(std::move(hasher)), input_scale_(input_scale) {}

StateCode SimHashStateHasher::Hash(const Observation& observation) const {
  if (input_scale_ == 1.0) return hasher_.Hash(observation);
  Observation x = observation;
  for (double& v : x) v *= input_scale_;
  return hasher_.Hash(x);
}

BassStateHasher::BassStateHasher(BassConfig config, int height, int width,
                                 std::optional<SimHasher> downsampler)
    : config_(config), height_(height), width_(width), downsampler_(std::move(downsampler)) {
  if (downsampler_ &&
      downsampler_->input_dim() != FeatureCount(config_, height_, width_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "BASS downsampler input width does not match the feature count");
  }
}

std::size_t BassStateHasher::FeatureCount(const BassConfig& config, int height,
                                          int width) {
  if (config.cell_size < 1) return 0;
  return static_cast<std::size_t>(height / config.cell_size) *
         static_cast<std::size_t>(width / config.cell_size) *
         static_cast<std::size_t>(config.channels);
}

StateCode BassStateHasher::Hash(const Observation& observation) const {
  Image image{height_, width_, config_.channels, {}};
  image.pixels.reserve(observation.size());
  for (double v : observation) {
    const double r = std::round(v);
    if (!std::isfinite(v) || r != v) {
      throw Error(ErrorCode::kIntensityOutOfRange, "BASS needs integer intensities");
    }
    image.pixels.push_back(static_cast<int>(r));
  }
  IntCode features = BassFeatures(image, config_);
  if (!downsampler_) return features;
  std::vector<double> reals(features.begin(), features.end());
  return downsampler_->Hash(reals);
}

GridStateHasher::GridStateHasher(GridHashConfig config) : config_(std::move(config)) {}

StateCode GridStateHasher::Hash(const Observation& observation) const {
  return GridHash(observation, config_);
}

LearnedStateHasher::LearnedStateHasher(AutoencoderModel model,
                                       SimHasher downsampler,
                                       AutoencoderTraining training,
                                       double input_scale, std::uint64_t seed)
    : trainee_(std::move(model)),
      snapshot_(std::make_shared<const AutoencoderModel>(trainee_)),
      downsampler_(std::move(downsampler)),
      training_(training),
      input_scale_(input_scale),
      replay_(training.replay_capacity),
      replay_rng_(StreamSeed(seed, Stream::kReplay)),
      noise_rng_(StreamSeed(seed, Stream::kAutoencoderNoise)) {
  if (downsampler_.input_dim() != trainee_.code_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "downsampler must take the full code");
  }
  if (training_.update_every == 0 || training_.minibatch == 0) {
    throw Error(ErrorCode::kInvalidArgument, "update cadence and minibatch must be >= 1");
  }
}

Observation LearnedStateHasher::Scale(const Observation& observation) const {
  if (input_scale_ == 1.0) return observation;
  Observation x = observation;
  for (double& v : x) v *= input_scale_;
  return x;
}

StateCode LearnedStateHasher::Hash(const Observation& observation) const {
  return LearnedHash(*snapshot_, Scale(observation), downsampler_);
}

void LearnedStateHasher::AddObservations(const std::vector<Trajectory>& batch) {
  for (const auto& traj : batch) {
    for (const auto& step : traj.steps) replay_.Add(Scale(step.observation));
  }
}

double LearnedStateHasher::Train() {
  if (replay_.size() == 0 || training_.steps_per_update == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < training_.steps_per_update; ++i) {
    TrainBatch batch = replay_.Sample(training_.minibatch, replay_rng_);
    total += TrainStep(trainee_, batch, adam_, training_.learning_rate, noise_rng_);
  }
  snapshot_ = std::make_shared<const AutoencoderModel>(trainee_);
  return total / static_cast<double>(training_.steps_per_update);
}

PhaseCheckedCounter::PhaseCheckedCounter(std::unique_ptr<Counter> counter)
    : counter_(std::move(counter)) {
  if (!counter_) throw Error(ErrorCode::kInvalidArgument, "counter must not be null");
}

std::uint64_t PhaseCheckedCounter::Increment(const CountKey& key) {
  if (querying_) {
    throw Error(ErrorCode::kPhaseViolation,
                "increment after a bonus query within the same iteration");
  }
  return counter_->Increment(key);
}

std::uint64_t PhaseCheckedCounter::Query(const CountKey& key) {
  querying_ = true;
  return counter_->Query(key);
}

BonusPipeline::BonusPipeline(std::unique_ptr<StateHasher> hasher,
                             std::unique_ptr<Counter> counter,
                             BonusConfig config)
    : hasher_(std::move(hasher)), counter_(std::move(counter)), config_(config) {
  if (!hasher_) throw Error(ErrorCode::kInvalidArgument, "hasher must not be null");
  if (!(config_.beta >= 0.0) || !std::isfinite(config_.beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be finite and >= 0");
  }
}

void BonusPipeline::Apply(std::vector<Trajectory>& batch) {
  counter_.BeginIteration();
  std::vector<CountKey> keys;
  for (const auto& traj : batch) {
    for (const auto& step : traj.steps) {
      if (step.bonus_reward != 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "bonus already applied to this batch");
      }
      keys.push_back(MakeKey(hasher_->Hash(step.observation), step.action, config_));
      counter_.Increment(keys.back());
    }
  }
  std::size_t i = 0;
  for (auto& traj : batch) {
    for (auto& step : traj.steps) {
      step.bonus_reward = Bonus(counter_.Query(keys[i++]), config_);
    }
  }
}

}  // namespace hashcount
