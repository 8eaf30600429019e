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

#ifndef HASHCOUNT_EXPERIMENT_H_
#define HASHCOUNT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hashcount/agents.h"
#include "hashcount/bonus.h"
#include "hashcount/counter.h"
#include "hashcount/env.h"
#include "hashcount/pipeline.h"

namespace hashcount {

enum class EnvKind { kChain, kGridworld, kPointMass };
enum class HasherKind { kNone, kSimHash, kBass, kGrid, kLearned };
enum class AgentKind { kQLearning, kReinforce };
enum class QStateKind { kObservation, kHash };

// Everything one experiment needs. Defaults describe the chain-MDP
// SimHash setup; see README.md for the matching config-file keys.
struct ExperimentConfig {
  std::string name = "experiment";

  EnvKind env = EnvKind::kChain;
  std::size_t chain_states = 50;
  int grid_width = 10;
  int grid_height = 10;
  std::size_t grid_horizon = 50;
  GridObservation grid_observation = GridObservation::kImage;
  double goal_radius = kDefaultGoalRadius;
  std::uint64_t env_seed = 0;

  HasherKind hasher = HasherKind::kSimHash;
  std::size_t simhash_k = 32;
  int bass_cell = 2;
  int bass_bins = 4;
  bool bass_simhash = false;
  std::vector<double> grid_sizes = {0.2, 0.2, 0.1, 0.1};

  std::size_t ae_hidden = 0;  // encoder hidden width, 0 for none
  std::size_t ae_code_dim = 64;
  double ae_noise = 0.3;
  double ae_lambda = 10.0;
  std::size_t ae_update_every = 3;
  std::size_t ae_steps = 100;
  std::size_t ae_minibatch = 32;
  double ae_learning_rate = 0.01;
  std::size_t ae_replay_capacity = 10000;

  CounterBackend counter = CounterBackend::kExact;
  std::vector<std::uint64_t> primes = {kSixMillionPrimes.begin(), kSixMillionPrimes.end()};

  bool bonus = true;
  double beta = 0.01;
  CountMode count_mode = CountMode::kState;

  AgentKind agent = AgentKind::kReinforce;
  PolicyKind policy = PolicyKind::kTabular;
  double learning_rate = 10.0;
  double alpha = 0.5;
  double gamma = 0.99;
  double epsilon = 0.1;
  QStateKind q_state = QStateKind::kObservation;
  std::size_t batch_size = 1000;

  std::size_t iterations = 30;
  std::vector<std::uint64_t> seeds = {0};
  std::size_t final_window = 5;
  std::size_t reference_k = 16;
  std::string output_dir = "results";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws kConfigInvalid naming the offending key.
void ValidateConfig(const ExperimentConfig& config);

struct MetricsRow {
  std::size_t iteration = 0;
  std::uint64_t seed = 0;
  double mean_true_return = 0.0;
  double mean_bonus = 0.0;
  std::uint64_t distinct_keys = 0;
  std::uint64_t counter_bytes = 0;
  std::optional<double> ae_loss;
  double wall_ms = 0.0;
};

// Per-iteration series of one seed.
struct RunResult {
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
  std::vector<double> true_returns;  // every episode, in collection order

  // First iteration whose batch reached the goal.
  std::optional<std::size_t> FirstGoalIteration() const;
  // Mean of mean_true_return over the last `window` iterations.
  double FinalReturn(std::size_t window) const;
};

std::unique_ptr<Environment> MakeEnvironment(const ExperimentConfig& config);

// Hasher described by the config, or null for HasherKind::kNone.
std::unique_ptr<StateHasher> MakeHasher(const ExperimentConfig& config,
                                        const EnvSpec& spec,
                                        std::uint64_t run_seed);

std::unique_ptr<Counter> MakeCounter(const ExperimentConfig& config);

// Collect -> (retrain autoencoder) -> hash/count -> bonus -> update, for
// config.iterations iterations. With bonus off (or hasher = none) nothing
// is counted and bonuses stay zero. Random streams for the agent, the
// environment and the hasher are derived from `seed` independently, so the
// bonus path never changes the agent's draws. Single-threaded.
RunResult RunExperiment(const ExperimentConfig& config, std::uint64_t seed);

// Same config with the bonus path switched off.
ExperimentConfig BaselineOf(const ExperimentConfig& config);

}  // namespace hashcount

#endif  // HASHCOUNT_EXPERIMENT_H_
