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

// Learners that consume bonus-augmented rewards: tabular Q-learning with an
// epsilon-greedy behaviour policy and REINFORCE with a softmax policy.

#ifndef HASHCOUNT_AGENTS_H_
#define HASHCOUNT_AGENTS_H_

#include <cstddef>
#include <functional>
#include <unordered_map>
#include <vector>

#include "hashcount/count_key.h"
#include "hashcount/env.h"
#include "hashcount/seed.h"

namespace hashcount {

struct TrajectoryStep {
  Observation observation;  // state the action was taken in
  ActionId action = 0;
  double true_reward = 0.0;
  double bonus_reward = 0.0;
  bool done = false;
  bool truncated = false;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  Observation final_observation;  // state after the last step

  // Sum of environment rewards; bonuses never enter it.
  double ReturnTrue() const;
  // Sum of environment rewards plus bonuses, the training signal.
  double ReturnTrain() const;
  bool ReachedGoal() const;
};

// Discounted (true + bonus) return from every step to the episode end.
std::vector<double> DiscountedReturns(const Trajectory& trajectory,
                                      double gamma);

using StateKeyFn = std::function<CountKey(const Observation&)>;

class Agent {
 public:
  virtual ~Agent() = default;
  virtual ActionId Act(const Observation& observation, Rng& rng) = 0;
  virtual void Update(const std::vector<Trajectory>& batch) = 0;
};

// Runs complete episodes until at least `batch_size` steps are gathered.
// Episode seeds are drawn from `env_rng`; bonus fields start at zero.
std::vector<Trajectory> CollectBatch(Environment& env, Agent& agent,
                                     std::size_t batch_size, Rng& agent_rng,
                                     Rng& env_rng);

class QTable {
 public:
  QTable(std::size_t action_count, double alpha, double gamma, double epsilon);

  double Value(const CountKey& state, ActionId action) const;
  double MaxValue(const CountKey& state) const;

  // Arg-max with uniform tie-breaking.
  ActionId Greedy(const CountKey& state, Rng& rng) const;
  ActionId EpsilonGreedy(const CountKey& state, Rng& rng) const;

  // Q(s, a) += alpha * (target - Q(s, a)).
  void MoveTowards(const CountKey& state, ActionId action, double target);

  std::size_t action_count() const { return action_count_; }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  double epsilon() const { return epsilon_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t action_count_;
  double alpha_;
  double gamma_;
  double epsilon_;
  std::unordered_map<CountKey, std::vector<double>, CountKeyHash> values_;
};

// One-step Q-learning over every transition of the batch, in order, on
// (r + r+) targets; true terminal states bootstrap with 0, horizon cuts
// bootstrap from the final observation.
void QLearningUpdate(QTable& table, const std::vector<Trajectory>& batch,
                     const StateKeyFn& state_key);

class QLearningAgent final : public Agent {
 public:
  QLearningAgent(QTable table, StateKeyFn state_key);

  ActionId Act(const Observation& observation, Rng& rng) override;
  void Update(const std::vector<Trajectory>& batch) override;
  const QTable& table() const { return table_; }

 private:
  QTable table_;
  StateKeyFn state_key_;
};

enum class PolicyKind { kTabular, kLinear };

// Softmax over action logits (temperature 1). Linear policies map a
// feature vector to logits with W x + b; tabular policies keep one logit
// row per exact observation, which is a linear map over the one-hot
// encoding of the observation. Unseen observations have all-zero logits.
class SoftmaxPolicy {
 public:
  static SoftmaxPolicy Linear(std::size_t feature_dim, std::size_t action_count);
  static SoftmaxPolicy Tabular(std::size_t action_count);

  PolicyKind kind() const { return kind_; }
  std::size_t action_count() const { return action_count_; }
  std::size_t feature_dim() const { return feature_dim_; }

  std::vector<double> Logits(const Observation& features) const;
  std::vector<double> Probabilities(const Observation& features) const;
  ActionId Sample(const Observation& features, Rng& rng) const;

  // Linear parameters, row-major action_count x (feature_dim + 1) with the
  // bias in the last column.
  std::vector<double>& linear_weights() { return linear_; }
  const std::vector<double>& linear_weights() const { return linear_; }

  // Tabular rows.
  using Table = std::unordered_map<CountKey, std::vector<double>, CountKeyHash>;
  Table& table() { return table_; }
  const Table& table() const { return table_; }

  friend bool operator==(const SoftmaxPolicy&, const SoftmaxPolicy&) = default;

 private:
  PolicyKind kind_ = PolicyKind::kTabular;
  std::size_t action_count_ = 0;
  std::size_t feature_dim_ = 0;
  std::vector<double> linear_;
  Table table_;
};

// Gradient of the REINFORCE surrogate, shaped like the policy parameters.
struct PolicyGradient {
  std::vector<double> linear;
  SoftmaxPolicy::Table table;
};

// (1/M) sum_episodes sum_t (G_t - b_t) grad log pi(a_t | s_t), with G_t the
// discounted (r + r+) return and b_t the mean of G_t over the episodes of
// the batch that are still running at step t. `features` maps observations to policy inputs.
PolicyGradient ReinforceGradient(
    const SoftmaxPolicy& policy, const std::vector<Trajectory>& batch,
    double gamma, const std::function<Observation(const Observation&)>& features);

// Gradient ascent step: theta += learning_rate * gradient.
void ApplyPolicyGradient(SoftmaxPolicy& policy, const PolicyGradient& gradient,
                         double learning_rate);

void ReinforceUpdate(SoftmaxPolicy& policy, const std::vector<Trajectory>& batch,
                     double learning_rate, double gamma,
                     const std::function<Observation(const Observation&)>& features);

class ReinforceAgent final : public Agent {
 public:
  // Observations are multiplied by `feature_scale` before the policy sees
  // them.
  ReinforceAgent(SoftmaxPolicy policy, double learning_rate, double gamma,
                 double feature_scale);

  ActionId Act(const Observation& observation, Rng& rng) override;
  void Update(const std::vector<Trajectory>& batch) override;
  const SoftmaxPolicy& policy() const { return policy_; }

 private:
  Observation Features(const Observation& observation) const;

  SoftmaxPolicy policy_;
  double learning_rate_;
  double gamma_;
  double feature_scale_;
};

}  // namespace hashcount

#endif  // HASHCOUNT_AGENTS_H_
