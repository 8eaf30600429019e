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

#include "hashcount/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "hashcount/error.h"
#include "hashcount/seed.h"

namespace hashcount {
namespace {

[[noreturn]] void Invalid(const std::string& key, const std::string& reason) {
  throw Error(ErrorCode::kConfigInvalid, key + ": " + reason);
}

bool IsUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ValidateConfig(const ExperimentConfig& c) {
  if (c.name.empty()) Invalid("name", "must not be empty");
  if (c.name.find_first_of("/\\#\n") != std::string::npos) {
    Invalid("name", "must not contain '/', '\\', '#' or newlines");
  }
  if (c.output_dir.empty() || c.output_dir.find_first_of("#\n") != std::string::npos) {
    Invalid("output_dir", "must be non-empty without '#' or newlines");
  }
  switch (c.env) {
    case EnvKind::kChain:
      if (c.chain_states < 3) Invalid("env.n_states", "must be >= 3");
      break;
    case EnvKind::kGridworld:
      if (c.grid_width < 2 || c.grid_height < 2) Invalid("env.width", "grid must be at least 2x2");
      if (c.grid_horizon < 1) Invalid("env.horizon", "must be >= 1");
      break;
    case EnvKind::kPointMass:
      if (!(c.goal_radius > 0.0 && c.goal_radius < 0.5)) {
        Invalid("env.goal_radius", "must lie in (0, 0.5)");
      }
      break;
  }

  const bool image = c.env == EnvKind::kGridworld && c.grid_observation == GridObservation::kImage;
  switch (c.hasher) {
    case HasherKind::kNone:
      if (c.agent == AgentKind::kQLearning && c.q_state == QStateKind::kHash) {
        Invalid("agent.q_state", "hash state keys need a hasher");
      }
      break;
    case HasherKind::kSimHash:
      if (c.simhash_k < 1) Invalid("hasher.k", "must be >= 1");
      break;
    case HasherKind::kBass:
      if (!image) Invalid("hasher", "bass needs gridworld image observations");
      if (c.bass_cell < 1) Invalid("hasher.bass_cell", "must be >= 1");
      if (c.bass_bins < 1) Invalid("hasher.bass_bins", "must be >= 1");
      if (c.grid_width % c.bass_cell != 0 || c.grid_height % c.bass_cell != 0) {
        Invalid("hasher.bass_cell", "must divide the image width and height");
      }
      if (c.bass_simhash && c.simhash_k < 1) Invalid("hasher.k", "must be >= 1");
      break;
    case HasherKind::kGrid: {
      std::size_t dim = c.env == EnvKind::kChain ? c.chain_states
                        : c.env == EnvKind::kPointMass ? 4
                        : image ? static_cast<std::size_t>(c.grid_width * c.grid_height)
                                : 2;
      if (c.grid_sizes.size() != dim) {
        Invalid("hasher.grid_sizes", "needs one size per observation dimension (" +
                                         std::to_string(dim) + ")");
      }
      for (double s : c.grid_sizes) {
        if (!(s > 0.0) || !std::isfinite(s)) Invalid("hasher.grid_sizes", "sizes must be > 0");
      }
      break;
    }
    case HasherKind::kLearned:
      if (c.simhash_k < 1) Invalid("hasher.k", "must be >= 1");
      if (c.ae_code_dim < 1) Invalid("ae.code_dim", "must be >= 1");
      if (!(c.ae_noise > 0.25)) Invalid("ae.noise", "must exceed 1/4");
      if (!(c.ae_lambda >= 0.0)) Invalid("ae.lambda", "must be >= 0");
      if (c.ae_update_every < 1) Invalid("ae.update_every", "must be >= 1");
      if (c.ae_minibatch < 1) Invalid("ae.minibatch", "must be >= 1");
      if (!(c.ae_learning_rate > 0.0)) Invalid("ae.learning_rate", "must be > 0");
      if (c.ae_replay_capacity < 1) Invalid("ae.replay_capacity", "must be >= 1");
      if (c.env == EnvKind::kPointMass) Invalid("hasher", "learned hashing needs inputs in [0, 1]");
      if (c.agent == AgentKind::kQLearning && c.q_state == QStateKind::kHash) {
        Invalid("agent.q_state", "hash state keys cannot use a learned hasher");
      }
      break;
  }

  if (c.counter == CounterBackend::kCountMin) {
    if (c.primes.empty()) Invalid("counter.primes", "needs at least one prime");
    std::vector<std::uint64_t> sorted = c.primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      Invalid("counter.primes", "primes must be distinct");
    }
    for (std::uint64_t p : c.primes) {
      if (!IsPrime(p)) Invalid("counter.primes", std::to_string(p) + " is not prime");
    }
  }

  if (!(c.beta >= 0.0) || !std::isfinite(c.beta)) Invalid("beta", "must be finite and >= 0");
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) {
    Invalid("agent.learning_rate", "must be finite and >= 0");
  }
  if (!IsUnitInterval(c.alpha)) Invalid("agent.alpha", "must lie in [0, 1]");
  if (!IsUnitInterval(c.gamma)) Invalid("agent.gamma", "must lie in [0, 1]");
  if (!IsUnitInterval(c.epsilon)) Invalid("agent.epsilon", "must lie in [0, 1]");
  if (c.batch_size < 1) Invalid("agent.batch_size", "must be >= 1");
  if (c.iterations < 1) Invalid("iterations", "must be >= 1");
  if (c.seeds.empty()) Invalid("seeds", "needs at least one seed");
  if (c.final_window < 1) Invalid("final_window", "must be >= 1");
  if (c.reference_k < 1) Invalid("sweep.reference_k", "must be >= 1");
}

std::optional<std::size_t> RunResult::FirstGoalIteration() const {
  for (const auto& row : rows) {
    if (row.mean_true_return > 0.0) return row.iteration;
  }
  return std::nullopt;
}

double RunResult::FinalReturn(std::size_t window) const {
  if (rows.empty()) return 0.0;
  const std::size_t n = std::min(window, rows.size());
  double total = 0.0;
  for (std::size_t i = rows.size() - n; i < rows.size(); ++i) {
    total += rows[i].mean_true_return;
  }
  return total / static_cast<double>(n);
}

std::unique_ptr<Environment> MakeEnvironment(const ExperimentConfig& c) {
  switch (c.env) {
    case EnvKind::kChain:
      return MakeChainMdp(c.chain_states, c.env_seed);
    case EnvKind::kGridworld: {
      GridworldOptions o;
      o.width = c.grid_width;
      o.height = c.grid_height;
      o.horizon = c.grid_horizon;
      o.observation = c.grid_observation;
      return MakeSparseGridworld(o, c.env_seed);
    }
    case EnvKind::kPointMass:
      return MakeSparsePointMass(c.goal_radius, c.env_seed);
  }
  throw Error(ErrorCode::kConfigInvalid, "env: unknown environment");
}

std::unique_ptr<StateHasher> MakeHasher(const ExperimentConfig& c,
                                        const EnvSpec& spec,
                                        std::uint64_t run_seed) {
  const double scale = spec.is_image() ? 1.0 / 255.0 : 1.0;
  const std::uint64_t seed = StreamSeed(run_seed, Stream::kHasher);
  switch (c.hasher) {
    case HasherKind::kNone:
      return nullptr;
    case HasherKind::kSimHash:
      return std::make_unique<SimHashStateHasher>(
          SimHasher(c.simhash_k, spec.observation_size(), seed), scale);
    case HasherKind::kBass: {
      const int h = static_cast<int>(spec.observation_shape.at(0));
      const int w = static_cast<int>(spec.observation_shape.at(1));
      BassConfig bass{c.bass_cell, c.bass_bins,
                      static_cast<int>(spec.observation_shape.at(2))};
      std::optional<SimHasher> down;
      if (c.bass_simhash) {
        down.emplace(c.simhash_k, BassStateHasher::FeatureCount(bass, h, w), seed);
      }
      return std::make_unique<BassStateHasher>(bass, h, w, std::move(down));
    }
    case HasherKind::kGrid:
      return std::make_unique<GridStateHasher>(GridHashConfig{c.grid_sizes});
    case HasherKind::kLearned: {
      std::vector<std::size_t> sizes = {spec.observation_size()};
      if (c.ae_hidden > 0) sizes.push_back(c.ae_hidden);
      AutoencoderModel model = AutoencoderModel::Create(
          sizes, c.ae_code_dim, c.ae_noise, c.ae_lambda,
          StreamSeed(run_seed, Stream::kAutoencoderInit));
      AutoencoderTraining training{c.ae_update_every, c.ae_steps, c.ae_minibatch,
                                   c.ae_learning_rate, c.ae_replay_capacity};
      return std::make_unique<LearnedStateHasher>(
          std::move(model), SimHasher(c.simhash_k, c.ae_code_dim, seed), training,
          scale, run_seed);
    }
  }
  throw Error(ErrorCode::kConfigInvalid, "hasher: unknown kind");
}

std::unique_ptr<Counter> MakeCounter(const ExperimentConfig& c) {
  if (c.counter == CounterBackend::kCountMin) {
    return std::make_unique<CountMinSketch>(c.primes);
  }
  return std::make_unique<ExactCounter>();
}

ExperimentConfig BaselineOf(const ExperimentConfig& config) {
  ExperimentConfig b = config;
  b.bonus = false;
  return b;
}

RunResult RunExperiment(const ExperimentConfig& c, std::uint64_t seed) {
  ValidateConfig(c);
  auto env = MakeEnvironment(c);
  const EnvSpec spec = env->spec();
  const double scale = spec.is_image() ? 1.0 / 255.0 : 1.0;

  Rng agent_rng(StreamSeed(seed, Stream::kAgent));
  Rng env_rng(StreamSeed(seed, Stream::kEnvironment));

  std::unique_ptr<Agent> agent;
  std::unique_ptr<StateHasher> q_hasher;
  if (c.agent == AgentKind::kReinforce) {
    SoftmaxPolicy policy = c.policy == PolicyKind::kTabular
                               ? SoftmaxPolicy::Tabular(spec.action_count)
                               : SoftmaxPolicy::Linear(spec.observation_size(), spec.action_count);
    agent = std::make_unique<ReinforceAgent>(std::move(policy), c.learning_rate,
                                             c.gamma, scale);
  } else {
    StateKeyFn key;
    if (c.q_state == QStateKind::kHash) {
      q_hasher = MakeHasher(c, spec, seed);
      const StateHasher* h = q_hasher.get();
      key = [h](const Observation& o) { return EncodeKey(h->Hash(o)); };
    } else {
      key = [](const Observation& o) { return EncodeObservationKey(o); };
    }
    agent = std::make_unique<QLearningAgent>(
        QTable(spec.action_count, c.alpha, c.gamma, c.epsilon), std::move(key));
  }

  std::unique_ptr<BonusPipeline> pipeline;
  LearnedStateHasher* learned = nullptr;
  if (c.bonus && c.hasher != HasherKind::kNone) {
    auto hasher = MakeHasher(c, spec, seed);
    learned = dynamic_cast<LearnedStateHasher*>(hasher.get());
    pipeline = std::make_unique<BonusPipeline>(
        std::move(hasher), MakeCounter(c), BonusConfig{c.beta, c.count_mode});
  }

  RunResult result;
  result.seed = seed;
  for (std::size_t it = 0; it < c.iterations; ++it) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Trajectory> batch = CollectBatch(*env, *agent, c.batch_size, agent_rng, env_rng);

    MetricsRow row;
    row.iteration = it;
    row.seed = seed;
    if (learned != nullptr) {
      learned->AddObservations(batch);
      if (it % c.ae_update_every == 0) row.ae_loss = learned->Train();
    }
    if (pipeline) pipeline->Apply(batch);
    agent->Update(batch);

    double returns = 0.0;
    double bonus = 0.0;
    std::size_t steps = 0;
    for (const auto& traj : batch) {
      double episode = 0.0;
      for (const auto& s : traj.steps) {
        episode += s.true_reward;
        bonus += s.bonus_reward;
      }
      steps += traj.steps.size();
      if (episode != traj.ReturnTrue()) {
        throw Error(ErrorCode::kPhaseViolation, "bonus leaked into the true return");
      }
      returns += episode;
      result.true_returns.push_back(episode);
    }
    row.mean_true_return = returns / static_cast<double>(batch.size());
    row.mean_bonus = steps > 0 ? bonus / static_cast<double>(steps) : 0.0;
    if (pipeline) {
      row.distinct_keys = pipeline->counter().novel_keys();
      row.counter_bytes = pipeline->counter().MemoryBytes();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace hashcount
