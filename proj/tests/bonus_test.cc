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

#include "hashcount/bonus.h"

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "hashcount/pipeline.h"
#include "test_util.h"

namespace hashcount {
namespace {

TEST(BonusTest, Values) {
  BonusConfig cfg{0.01, CountMode::kState};
  EXPECT_DOUBLE_EQ(Bonus(1, cfg), 0.01);
  EXPECT_DOUBLE_EQ(Bonus(4, cfg), 0.005);
  EXPECT_EQ(Bonus(12345, BonusConfig{0.0, CountMode::kState}), 0.0);
}

TEST(BonusTest, ZeroCountIsAnError) {
  EXPECT_EQ(CodeOf([] { Bonus(0, BonusConfig{}); }), ErrorCode::kZeroCount);
}

TEST(BonusTest, RejectsBadBeta) {
  EXPECT_EQ(CodeOf([] { Bonus(1, BonusConfig{-0.1, CountMode::kState}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              Bonus(1, BonusConfig{std::numeric_limits<double>::quiet_NaN(),
                                   CountMode::kState});
            }),
            ErrorCode::kInvalidArgument);
}

TEST(BonusTest, DecreasingInCountLinearInBeta) {
  BonusConfig one{1.0, CountMode::kState};
  BonusConfig three{3.0, CountMode::kState};
  for (std::uint64_t n = 1; n < 1000; ++n) {
    EXPECT_LT(Bonus(n + 1, one), Bonus(n, one));
    EXPECT_DOUBLE_EQ(Bonus(n, three), 3.0 * Bonus(n, one));
  }
}

TEST(MakeKeyTest, StateModeIgnoresAction) {
  BonusConfig cfg{0.01, CountMode::kState};
  StateCode code = BinaryCode({1, 0, 1});
  EXPECT_EQ(MakeKey(code, 0, cfg), MakeKey(code, 1, cfg));
  EXPECT_EQ(MakeKey(code, std::nullopt, cfg), MakeKey(code, 1, cfg));
}

TEST(MakeKeyTest, StateActionModeUsesAction) {
  BonusConfig cfg{0.01, CountMode::kStateAction};
  StateCode code = BinaryCode({1, 0, 1});
  EXPECT_NE(MakeKey(code, 0, cfg), MakeKey(code, 1, cfg));
  EXPECT_EQ(CodeOf([&] { MakeKey(code, std::nullopt, cfg); }), ErrorCode::kMissingAction);
}

// Maps an observation to a code of its first coordinate.
class FirstCoordinateHasher final : public StateHasher {
 public:
  StateCode Hash(const Observation& o) const override {
    return IntCode{static_cast<std::int64_t>(o[0])};
  }
};

Trajectory MakeTrajectory(std::vector<double> xs, ActionId action = 0) {
  Trajectory t;
  for (double x : xs) {
    TrajectoryStep s;
    s.observation = {x};
    s.action = action;
    t.steps.push_back(s);
  }
  t.final_observation = {0.0};
  return t;
}

TEST(BonusPipelineTest, CountsBeforeBonuses) {
  BonusPipeline pipeline(std::make_unique<FirstCoordinateHasher>(),
                         std::make_unique<ExactCounter>(),
                         BonusConfig{0.01, CountMode::kState});
  // State 5 appears four times across two episodes, state 6 once.
  std::vector<Trajectory> batch = {MakeTrajectory({5, 5, 6}), MakeTrajectory({5, 5})};
  pipeline.Apply(batch);
  EXPECT_DOUBLE_EQ(batch[0].steps[0].bonus_reward, 0.005);
  EXPECT_DOUBLE_EQ(batch[0].steps[1].bonus_reward, 0.005);
  EXPECT_DOUBLE_EQ(batch[0].steps[2].bonus_reward, 0.01);
  EXPECT_DOUBLE_EQ(batch[1].steps[1].bonus_reward, 0.005);
  for (const auto& t : batch) EXPECT_EQ(t.ReturnTrue(), 0.0);

  std::vector<Trajectory> next = {MakeTrajectory({6})};
  pipeline.Apply(next);
  EXPECT_DOUBLE_EQ(next[0].steps[0].bonus_reward, 0.01 / std::sqrt(2.0));
  EXPECT_EQ(pipeline.counter().novel_keys(), 2u);
}

TEST(BonusPipelineTest, RejectsBatchWithBonusesAlreadySet) {
  BonusPipeline pipeline(std::make_unique<FirstCoordinateHasher>(),
                         std::make_unique<ExactCounter>(), BonusConfig{});
  std::vector<Trajectory> batch = {MakeTrajectory({1})};
  pipeline.Apply(batch);
  EXPECT_EQ(CodeOf([&] { pipeline.Apply(batch); }), ErrorCode::kInvalidArgument);
}

TEST(PhaseCheckedCounterTest, IncrementAfterQueryIsAViolation) {
  PhaseCheckedCounter counter(std::make_unique<ExactCounter>());
  const CountKey key = EncodeKey(BinaryCode({1}));
  counter.BeginIteration();
  counter.Increment(key);
  EXPECT_EQ(counter.Query(key), 1u);
  EXPECT_EQ(CodeOf([&] { counter.Increment(key); }), ErrorCode::kPhaseViolation);
  counter.BeginIteration();
  EXPECT_EQ(counter.Increment(key), 2u);
}

}  // namespace
}  // namespace hashcount
