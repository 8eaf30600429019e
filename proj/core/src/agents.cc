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

#include "hashcount/agents.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "hashcount/error.h"

namespace hashcount {

double Trajectory::ReturnTrue() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.true_reward;
  return total;
}

double Trajectory::ReturnTrain() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.true_reward + s.bonus_reward;
  return total;
}

bool Trajectory::ReachedGoal() const {
  return !steps.empty() && steps.back().done && !steps.back().truncated;
}

std::vector<double> DiscountedReturns(const Trajectory& trajectory,
                                      double gamma) {
  std::vector<double> g(trajectory.steps.size());
  double running = 0.0;
  for (std::size_t t = trajectory.steps.size(); t-- > 0;) {
    const auto& s = trajectory.steps[t];
    running = s.true_reward + s.bonus_reward + gamma * running;
    g[t] = running;
  }
  return g;
}

std::vector<Trajectory> CollectBatch(Environment& env, Agent& agent,
                                     std::size_t batch_size, Rng& agent_rng,
                                     Rng& env_rng) {
  if (batch_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1 step");
  }
  std::vector<Trajectory> batch;
  std::size_t steps = 0;
  while (steps < batch_size) {
    Trajectory traj;
    Observation obs = env.Reset(env_rng());
    while (true) {
      const ActionId action = agent.Act(obs, agent_rng);
      StepResult r = env.Step(action);
      traj.steps.push_back({std::move(obs), action, r.reward, 0.0, r.done, r.truncated});
      ++steps;
      obs = std::move(r.observation);
      if (r.done) break;
    }
    traj.final_observation = std::move(obs);
    batch.push_back(std::move(traj));
  }
  return batch;
}

QTable::QTable(std::size_t action_count, double alpha, double gamma,
               double epsilon)
    : action_count_(action_count), alpha_(alpha), gamma_(gamma), epsilon_(epsilon) {
  if (action_count < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 actions");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must lie in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
  }
}

double QTable::Value(const CountKey& state, ActionId action) const {
  auto it = values_.find(state);
  return it == values_.end() ? 0.0 : it->second.at(action);
}

double QTable::MaxValue(const CountKey& state) const {
  auto it = values_.find(state);
  if (it == values_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

ActionId QTable::Greedy(const CountKey& state, Rng& rng) const {
  std::vector<ActionId> best;
  auto it = values_.find(state);
  if (it == values_.end()) {
    best.resize(action_count_);
    std::iota(best.begin(), best.end(), ActionId{0});
  } else {
    const double top = *std::max_element(it->second.begin(), it->second.end());
    for (std::size_t a = 0; a < action_count_; ++a) {
      if (it->second[a] == top) best.push_back(static_cast<ActionId>(a));
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
  return best[pick(rng)];
}

ActionId QTable::EpsilonGreedy(const CountKey& state, Rng& rng) const {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon_) {
    std::uniform_int_distribution<std::size_t> pick(0, action_count_ - 1);
    return static_cast<ActionId>(pick(rng));
  }
  return Greedy(state, rng);
}

void QTable::MoveTowards(const CountKey& state, ActionId action, double target) {
  if (alpha_ == 0.0) return;
  auto& row = values_.try_emplace(state, action_count_, 0.0).first->second;
  row.at(action) += alpha_ * (target - row[action]);
}

void QLearningUpdate(QTable& table, const std::vector<Trajectory>& batch,
                     const StateKeyFn& state_key) {
  for (const auto& traj : batch) {
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const auto& step = traj.steps[t];
      const bool terminal = step.done && !step.truncated;
      double target = step.true_reward + step.bonus_reward;
      if (!terminal) {
        const Observation& next = t + 1 < traj.steps.size()
                                      ? traj.steps[t + 1].observation
                                      : traj.final_observation;
        target += table.gamma() * table.MaxValue(state_key(next));
      }
      table.MoveTowards(state_key(step.observation), step.action, target);
    }
  }
}

QLearningAgent::QLearningAgent(QTable table, StateKeyFn state_key)
    : table_(std::move(table)), state_key_(std::move(state_key)) {}

ActionId QLearningAgent::Act(const Observation& observation, Rng& rng) {
  return table_.EpsilonGreedy(state_key_(observation), rng);
}

void QLearningAgent::Update(const std::vector<Trajectory>& batch) {
  QLearningUpdate(table_, batch, state_key_);
}

SoftmaxPolicy SoftmaxPolicy::Linear(std::size_t feature_dim,
                                    std::size_t action_count) {
  if (action_count < 2 || feature_dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "linear policy needs >= 2 actions and >= 1 feature");
  }
  SoftmaxPolicy p;
  p.kind_ = PolicyKind::kLinear;
  p.action_count_ = action_count;
  p.feature_dim_ = feature_dim;
  p.linear_.assign(action_count * (feature_dim + 1), 0.0);
  return p;
}

SoftmaxPolicy SoftmaxPolicy::Tabular(std::size_t action_count) {
  if (action_count < 2) throw Error(ErrorCode::kInvalidArgument, "policy needs >= 2 actions");
  SoftmaxPolicy p;
  p.kind_ = PolicyKind::kTabular;
  p.action_count_ = action_count;
  return p;
}

std::vector<double> SoftmaxPolicy::Logits(const Observation& features) const {
  if (kind_ == PolicyKind::kTabular) {
    auto it = table_.find(EncodeObservationKey(features));
    return it == table_.end() ? std::vector<double>(action_count_, 0.0) : it->second;
  }
  if (features.size() != feature_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "policy expects " + std::to_string(feature_dim_) + " features, got " +
                    std::to_string(features.size()));
  }
  std::vector<double> logits(action_count_);
  const std::size_t stride = feature_dim_ + 1;
  for (std::size_t a = 0; a < action_count_; ++a) {
    const double* w = &linear_[a * stride];
    double z = w[feature_dim_];
    for (std::size_t j = 0; j < feature_dim_; ++j) z += w[j] * features[j];
    logits[a] = z;
  }
  return logits;
}

std::vector<double> SoftmaxPolicy::Probabilities(const Observation& features) const {
  std::vector<double> p = Logits(features);
  const double top = *std::max_element(p.begin(), p.end());
  double total = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

ActionId SoftmaxPolicy::Sample(const Observation& features, Rng& rng) const {
  const std::vector<double> p = Probabilities(features);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  for (std::size_t a = 0; a + 1 < p.size(); ++a) {
    if (u < p[a]) return static_cast<ActionId>(a);
    u -= p[a];
  }
  return static_cast<ActionId>(p.size() - 1);
}

PolicyGradient ReinforceGradient(
    const SoftmaxPolicy& policy, const std::vector<Trajectory>& batch,
    double gamma, const std::function<Observation(const Observation&)>& features) {
  PolicyGradient grad;
  if (policy.kind() == PolicyKind::kLinear) {
    grad.linear.assign(policy.linear_weights().size(), 0.0);
  }
  if (batch.empty()) return grad;

  std::vector<std::vector<double>> returns;
  returns.reserve(batch.size());
  std::vector<double> baseline;
  std::vector<std::size_t> running;
  for (const auto& traj : batch) {
    returns.push_back(DiscountedReturns(traj, gamma));
    const auto& g = returns.back();
    if (g.size() > baseline.size()) {
      baseline.resize(g.size(), 0.0);
      running.resize(g.size(), 0);
    }
    for (std::size_t t = 0; t < g.size(); ++t) {
      baseline[t] += g[t];
      ++running[t];
    }
  }
  for (std::size_t t = 0; t < baseline.size(); ++t) {
    baseline[t] /= static_cast<double>(running[t]);
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  const std::size_t actions = policy.action_count();
  const std::size_t stride = policy.feature_dim() + 1;

  for (std::size_t e = 0; e < batch.size(); ++e) {
    const auto& traj = batch[e];
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const double advantage = returns[e][t] - baseline[t];
      if (advantage == 0.0) continue;
      const Observation x = features(traj.steps[t].observation);
      const std::vector<double> p = policy.Probabilities(x);
      // d log pi(a|x) / d logit_b = [a == b] - p_b
      std::vector<double>* row = nullptr;
      if (policy.kind() == PolicyKind::kTabular) {
        row = &grad.table.try_emplace(EncodeObservationKey(x), actions, 0.0).first->second;
      }
      for (std::size_t b = 0; b < actions; ++b) {
        const double dlogit =
            scale * advantage * ((traj.steps[t].action == b ? 1.0 : 0.0) - p[b]);
        if (row != nullptr) {
          (*row)[b] += dlogit;
        } else {
          double* g = &grad.linear[b * stride];
          for (std::size_t j = 0; j < x.size(); ++j) g[j] += dlogit * x[j];
          g[policy.feature_dim()] += dlogit;
        }
      }
    }
  }
  return grad;
}

void ApplyPolicyGradient(SoftmaxPolicy& policy, const PolicyGradient& gradient,
                         double learning_rate) {
  if (learning_rate == 0.0) return;
  if (policy.kind() == PolicyKind::kLinear) {
    auto& w = policy.linear_weights();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += learning_rate * gradient.linear[i];
    return;
  }
  for (const auto& [key, g] : gradient.table) {
    auto& row = policy.table().try_emplace(key, policy.action_count(), 0.0).first->second;
    for (std::size_t a = 0; a < row.size(); ++a) row[a] += learning_rate * g[a];
  }
}

void ReinforceUpdate(SoftmaxPolicy& policy, const std::vector<Trajectory>& batch,
                     double learning_rate, double gamma,
                     const std::function<Observation(const Observation&)>& features) {
  ApplyPolicyGradient(policy, ReinforceGradient(policy, batch, gamma, features),
                      learning_rate);
}

ReinforceAgent::ReinforceAgent(SoftmaxPolicy policy, double learning_rate,
                               double gamma, double feature_scale)
    : policy_(std::move(policy)),
      learning_rate_(learning_rate),
      gamma_(gamma),
      feature_scale_(feature_scale) {}

Observation ReinforceAgent::Features(const Observation& observation) const {
  if (feature_scale_ == 1.0) return observation;
  Observation x = observation;
  for (double& v : x) v *= feature_scale_;
  return x;
}

ActionId ReinforceAgent::Act(const Observation& observation, Rng& rng) {
  return policy_.Sample(Features(observation), rng);
}

void ReinforceAgent::Update(const std::vector<Trajectory>& batch) {
  ReinforceUpdate(policy_, batch, learning_rate_, gamma_,
                  [this](const Observation& o) { return Features(o); });
}

}  // namespace hashcount
