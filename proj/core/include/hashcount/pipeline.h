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

// Observation hashers and the hash -> count -> bonus pipeline.

#ifndef HASHCOUNT_PIPELINE_H_
#define HASHCOUNT_PIPELINE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hashcount/agents.h"
#include "hashcount/autoencoder.h"
#include "hashcount/bonus.h"
#include "hashcount/counter.h"
#include "hashcount/env.h"
#include "hashcount/hashing.h"

namespace hashcount {

class StateHasher {
 public:
  virtual ~StateHasher() = default;
  virtual StateCode Hash(const Observation& observation) const = 0;
};

// SimHash of the observation after multiplying it by `input_scale`
// (1/255 for intensity images).
class SimHashStateHasher final : public StateHasher {
 public:
  SimHashStateHasher(SimHasher hasher, double input_scale);
  StateCode Hash(const Observation& observation) const override;
  const SimHasher& hasher() const { return hasher_; }

 private:
  SimHasher hasher_;
  double input_scale_;
};

// BASS features of an image observation, used directly as an integer key
// or, when `downsampler` is set, SimHashed after flattening.
class BassStateHasher final : public StateHasher {
 public:
  BassStateHasher(BassConfig config, int height, int width,
                  std::optional<SimHasher> downsampler);
  StateCode Hash(const Observation& observation) const override;

  // Number of features BASS produces for this image shape.
  static std::size_t FeatureCount(const BassConfig& config, int height, int width);

 private:
  BassConfig config_;
  int height_;
  int width_;
  std::optional<SimHasher> downsampler_;
};

class GridStateHasher final : public StateHasher {
 public:
  explicit GridStateHasher(GridHashConfig config);
  StateCode Hash(const Observation& observation) const override;

 private:
  GridHashConfig config_;
};

struct AutoencoderTraining {
  std::size_t update_every = 3;      // retrain when iteration % this == 0
  std::size_t steps_per_update = 100;
  std::size_t minibatch = 32;
  double learning_rate = 0.01;
  std::size_t replay_capacity = 10000;
};

// Learned hashing: an autoencoder trained on a FIFO replay pool, with its
// rounded codes downsampled by SimHash. Hashing uses an immutable snapshot
// of the model that is replaced only by Train().
class LearnedStateHasher final : public StateHasher {
 public:
  LearnedStateHasher(AutoencoderModel model, SimHasher downsampler,
                     AutoencoderTraining training, double input_scale,
                     std::uint64_t seed);

  StateCode Hash(const Observation& observation) const override;

  void AddObservations(const std::vector<Trajectory>& batch);
  // Runs steps_per_update Adam steps on replay samples; returns the mean
  // training loss.
  double Train();

  const AutoencoderModel& model() const { return *snapshot_; }
  const ReplayPool& replay() const { return replay_; }
  const AutoencoderTraining& training() const { return training_; }

 private:
  Observation Scale(const Observation& observation) const;

  AutoencoderModel trainee_;
  std::shared_ptr<const AutoencoderModel> snapshot_;
  SimHasher downsampler_;
  AutoencoderTraining training_;
  double input_scale_;
  AdamState adam_;
  ReplayPool replay_;
  Rng replay_rng_;
  Rng noise_rng_;
};

// Counter wrapper that enforces the per-iteration order: every increment
// of an iteration happens before any query of that iteration. A violation
// throws kPhaseViolation.
class PhaseCheckedCounter {
 public:
  explicit PhaseCheckedCounter(std::unique_ptr<Counter> counter);

  void BeginIteration() { querying_ = false; }
  std::uint64_t Increment(const CountKey& key);
  std::uint64_t Query(const CountKey& key);

  const Counter& counter() const { return *counter_; }

 private:
  std::unique_ptr<Counter> counter_;
  bool querying_ = false;
};

class BonusPipeline {
 public:
  BonusPipeline(std::unique_ptr<StateHasher> hasher,
                std::unique_ptr<Counter> counter, BonusConfig config);

  // Hashes and counts every step of the batch, then sets each step's bonus
  // to beta / sqrt(n) from the post-update counts.
  void Apply(std::vector<Trajectory>& batch);

  StateHasher& hasher() { return *hasher_; }
  const Counter& counter() const { return counter_.counter(); }
  const BonusConfig& config() const { return config_; }

 private:
  std::unique_ptr<StateHasher> hasher_;
  PhaseCheckedCounter counter_;
  BonusConfig config_;
};

}  // namespace hashcount

#endif  // HASHCOUNT_PIPELINE_H_
