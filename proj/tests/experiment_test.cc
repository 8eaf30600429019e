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

#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace hashcount {
namespace {

ExperimentConfig SmallChain() {
  ExperimentConfig c;
  c.name = "small_chain";
  c.chain_states = 10;
  c.batch_size = 200;
  c.iterations = 6;
  return c;
}

ExperimentConfig SmallGrid(HasherKind hasher) {
  ExperimentConfig c;
  c.name = "small_grid";
  c.env = EnvKind::kGridworld;
  c.grid_width = 6;
  c.grid_height = 6;
  c.grid_horizon = 30;
  c.grid_observation = GridObservation::kImage;
  c.hasher = hasher;
  c.bass_cell = 2;
  c.bass_bins = 4;
  c.ae_hidden = 0;
  c.ae_code_dim = 8;
  c.ae_steps = 5;
  c.ae_update_every = 2;
  c.simhash_k = 8;
  c.batch_size = 200;
  c.iterations = 5;
  c.learning_rate = 50.0;
  return c;
}

ExperimentConfig SmallPointMass() {
  ExperimentConfig c;
  c.name = "small_pointmass";
  c.env = EnvKind::kPointMass;
  c.hasher = HasherKind::kGrid;
  c.policy = PolicyKind::kLinear;
  c.batch_size = 400;
  c.iterations = 4;
  return c;
}

std::vector<double> Returns(const RunResult& r) {
  std::vector<double> out;
  for (const auto& row : r.rows) out.push_back(row.mean_true_return);
  return out;
}

void ExpectBetaZeroMatchesBaseline(ExperimentConfig c) {
  c.beta = 0.0;
  ValidateConfig(c);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const RunResult with = RunExperiment(c, seed);
    const RunResult without = RunExperiment(BaselineOf(c), seed);
    EXPECT_EQ(with.true_returns, without.true_returns) << c.name << " seed " << seed;
    EXPECT_EQ(Returns(with), Returns(without));
    for (const auto& row : with.rows) EXPECT_EQ(row.mean_bonus, 0.0);
  }
}

TEST(ExperimentTest, BetaZeroMatchesBaselineChain) { ExpectBetaZeroMatchesBaseline(SmallChain()); }

TEST(ExperimentTest, BetaZeroMatchesBaselineGridworld) {
  ExpectBetaZeroMatchesBaseline(SmallGrid(HasherKind::kSimHash));
  ExpectBetaZeroMatchesBaseline(SmallGrid(HasherKind::kBass));
  ExpectBetaZeroMatchesBaseline(SmallGrid(HasherKind::kLearned));
}

TEST(ExperimentTest, BetaZeroMatchesBaselinePointMass) {
  ExpectBetaZeroMatchesBaseline(SmallPointMass());
}

TEST(ExperimentTest, BetaZeroMatchesBaselineQLearning) {
  ExperimentConfig c = SmallChain();
  c.agent = AgentKind::kQLearning;
  ExpectBetaZeroMatchesBaseline(c);
}

TEST(ExperimentTest, RowsAndKeyCounts) {
  ExperimentConfig c = SmallGrid(HasherKind::kSimHash);
  const RunResult r = RunExperiment(c, 4);
  ASSERT_EQ(r.rows.size(), c.iterations);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].iteration, i);
    EXPECT_EQ(r.rows[i].seed, 4u);
    EXPECT_GT(r.rows[i].mean_bonus, 0.0);
    EXPECT_GT(r.rows[i].counter_bytes, 0u);
    EXPECT_FALSE(r.rows[i].ae_loss.has_value());
    if (i > 0) EXPECT_GE(r.rows[i].distinct_keys, r.rows[i - 1].distinct_keys);
  }
}

TEST(ExperimentTest, LearnedHasherReportsLossOnUpdateIterations) {
  ExperimentConfig c = SmallGrid(HasherKind::kLearned);
  const RunResult r = RunExperiment(c, 1);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.ae_loss.has_value(), row.iteration % c.ae_update_every == 0) << row.iteration;
  }
}

TEST(ExperimentTest, Deterministic) {
  ExperimentConfig c = SmallGrid(HasherKind::kBass);
  const RunResult a = RunExperiment(c, 9);
  const RunResult b = RunExperiment(c, 9);
  EXPECT_EQ(a.true_returns, b.true_returns);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].mean_bonus, b.rows[i].mean_bonus);
    EXPECT_EQ(a.rows[i].distinct_keys, b.rows[i].distinct_keys);
  }
}

TEST(ExperimentTest, FixedPolicyMeanBonusFalls) {
  // With a frozen uniform policy counts only grow, so the seed-averaged
  // mean bonus must fall from one iteration to the next.
  ExperimentConfig c;
  c.env = EnvKind::kGridworld;
  c.grid_observation = GridObservation::kPosition;
  c.simhash_k = 16;
  c.learning_rate = 0.0;
  c.batch_size = 300;
  c.iterations = 10;
  std::vector<double> mean(c.iterations, 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RunResult r = RunExperiment(c, seed);
    for (std::size_t i = 0; i < r.rows.size(); ++i) mean[i] += r.rows[i].mean_bonus / 20.0;
  }
  for (std::size_t i = 1; i < mean.size(); ++i) EXPECT_LT(mean[i], mean[i - 1]) << i;
}

TEST(ExperimentTest, CountMinBackendRuns) {
  ExperimentConfig c = SmallChain();
  c.counter = CounterBackend::kCountMin;
  c.primes = {991, 997};
  const RunResult r = RunExperiment(c, 2);
  EXPECT_EQ(r.rows.back().counter_bytes, (991u + 997u) * 8u);
}

TEST(ExperimentTest, FirstGoalAndFinalReturn) {
  RunResult r;
  for (double v : {0.0, 0.0, 0.5, 1.0}) {
    MetricsRow row;
    row.iteration = r.rows.size();
    row.mean_true_return = v;
    r.rows.push_back(row);
  }
  EXPECT_EQ(r.FirstGoalIteration(), 2u);
  EXPECT_DOUBLE_EQ(r.FinalReturn(2), 0.75);
  RunResult none;
  none.rows.resize(3);
  EXPECT_FALSE(none.FirstGoalIteration().has_value());
}

TEST(ExperimentTest, InvalidConfigRejected) {
  ExperimentConfig c = SmallChain();
  c.beta = -1.0;
  EXPECT_EQ(CodeOf([&] { RunExperiment(c, 0); }), ErrorCode::kConfigInvalid);
}

}  // namespace
}  // namespace hashcount
