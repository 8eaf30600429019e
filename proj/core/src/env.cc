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

#include "hashcount/env.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "hashcount/error.h"

namespace hashcount {
namespace {

// Shared episode bookkeeping: reset/step ordering, action range, horizon.
class EpisodicEnv : public Environment {
 public:
  explicit EpisodicEnv(EnvSpec spec) : spec_(std::move(spec)) {}

  const EnvSpec& spec() const override { return spec_; }
  bool done() const override { return done_; }

  Observation Reset(std::uint64_t episode_seed) override {
    episode_seed_ = episode_seed;
    started_ = true;
    done_ = false;
    t_ = 0;
    ResetState();
    return Observe();
  }

  StepResult Step(std::size_t action) override {
    if (!started_) throw Error(ErrorCode::kStepBeforeReset, "call Reset before Step");
    if (done_) throw Error(ErrorCode::kStepAfterDone, "episode already finished");
    if (action >= spec_.action_count) {
      throw Error(ErrorCode::kInvalidAction,
                  "action " + std::to_string(action) + " >= action count " +
                      std::to_string(spec_.action_count));
    }
    StepResult r;
    const bool goal = Advance(action);
    ++t_;
    r.reward = goal ? 1.0 : 0.0;
    r.truncated = !goal && t_ >= spec_.horizon;
    r.done = goal || r.truncated;
    done_ = r.done;
    r.observation = Observe();
    return r;
  }

 protected:
  virtual void ResetState() = 0;
  // Applies the action; returns true when the goal was reached.
  virtual bool Advance(std::size_t action) = 0;
  virtual Observation Observe() const = 0;

  EnvSpec spec_;
  std::uint64_t episode_seed_ = 0;

 private:
  bool started_ = false;
  bool done_ = false;
  std::size_t t_ = 0;
};

class ChainMdp final : public EpisodicEnv {
 public:
  explicit ChainMdp(std::size_t n)
      : EpisodicEnv(EnvSpec{{n}, 2, 4 * n}), n_(n) {}

  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<ChainMdp>(*this);
  }

 private:
  void ResetState() override { state_ = 0; }

  bool Advance(std::size_t action) override {
    if (action == 1) {
      ++state_;
    } else if (state_ > 0) {
      --state_;
    }
    return state_ == n_ - 1;
  }

  Observation Observe() const override {
    Observation o(n_, 0.0);
    o[state_] = 1.0;
    return o;
  }

  std::size_t n_;
  std::size_t state_ = 0;
};

class Gridworld final : public EpisodicEnv {
 public:
  explicit Gridworld(const GridworldOptions& o)
      : EpisodicEnv(MakeSpec(o)), options_(o) {
    blocked_.assign(static_cast<std::size_t>(o.width) * o.height, false);
    for (const Cell& w : o.walls) blocked_[Index(w)] = true;
  }

  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<Gridworld>(*this);
  }

 private:
  static EnvSpec MakeSpec(const GridworldOptions& o) {
    EnvSpec spec;
    spec.action_count = 4;
    spec.horizon = o.horizon;
    if (o.observation == GridObservation::kImage) {
      spec.observation_shape = {static_cast<std::size_t>(o.height),
                                static_cast<std::size_t>(o.width), 1};
    } else {
      spec.observation_shape = {2};
    }
    return spec;
  }

  std::size_t Index(Cell c) const {
    return static_cast<std::size_t>(c.y) * options_.width + c.x;
  }

  void ResetState() override { agent_ = options_.start; }

  bool Advance(std::size_t action) override {
    static constexpr int kDx[] = {0, 0, -1, 1};
    static constexpr int kDy[] = {1, -1, 0, 0};
    const Cell next{agent_.x + kDx[action], agent_.y + kDy[action]};
    if (next.x >= 0 && next.x < options_.width && next.y >= 0 &&
        next.y < options_.height && !blocked_[Index(next)]) {
      agent_ = next;
    }
    return agent_ == options_.goal;
  }

  Observation Observe() const override {
    if (options_.observation == GridObservation::kPosition) {
      return {static_cast<double>(agent_.x), static_cast<double>(agent_.y)};
    }
    Observation img(static_cast<std::size_t>(options_.width) * options_.height, 0.0);
    for (const Cell& w : options_.walls) img[Index(w)] = kGridWallValue;
    img[Index(agent_)] = kGridAgentValue;
    return img;
  }

  GridworldOptions options_;
  std::vector<bool> blocked_;
  Cell agent_;
};

class PointMass final : public EpisodicEnv {
 public:
  explicit PointMass(double goal_radius)
      : EpisodicEnv(EnvSpec{{4}, 4, 200}), goal_radius_(goal_radius) {}

  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<PointMass>(*this);
  }

 private:
  static constexpr double kThrust = 0.05;
  static constexpr double kMaxSpeed = 0.2;
  static constexpr double kGoal = 0.9;

  void ResetState() override { x_ = y_ = -0.9; vx_ = vy_ = 0.0; }

  // Positions are clamped to the box; velocity is only speed-limited.
  static void Move(double& pos, double vel) { pos = std::clamp(pos + vel, -1.0, 1.0); }

  bool Advance(std::size_t action) override {
    const double ax = (action == 0 || action == 1) ? kThrust : -kThrust;
    const double ay = (action == 0 || action == 2) ? kThrust : -kThrust;
    vx_ = std::clamp(vx_ + ax, -kMaxSpeed, kMaxSpeed);
    vy_ = std::clamp(vy_ + ay, -kMaxSpeed, kMaxSpeed);
    Move(x_, vx_);
    Move(y_, vy_);
    return std::hypot(x_ - kGoal, y_ - kGoal) <= goal_radius_;
  }

  Observation Observe() const override { return {x_, y_, vx_, vy_}; }

  double goal_radius_;
  double x_ = -0.9, y_ = -0.9, vx_ = 0.0, vy_ = 0.0;
};

}  // namespace

std::size_t EnvSpec::observation_size() const {
  std::size_t n = 1;
  for (std::size_t d : observation_shape) n *= d;
  return n;
}

std::unique_ptr<Environment> MakeChainMdp(std::size_t n_states,
                                          std::uint64_t /*seed*/) {
  if (n_states < 3) {
    throw Error(ErrorCode::kInvalidSize,
                "chain needs at least 3 states, got " + std::to_string(n_states));
  }
  return std::make_unique<ChainMdp>(n_states);
}

std::vector<Cell> TwoRoomWalls(int width, int height) {
  std::vector<Cell> walls;
  const int x = width / 2;
  for (int y = 0; y + 1 < height; ++y) walls.push_back({x, y});
  return walls;
}

std::unique_ptr<Environment> MakeSparseGridworld(const GridworldOptions& options,
                                                 std::uint64_t /*seed*/) {
  GridworldOptions o = options;
  if (o.width < 2 || o.height < 2) {
    throw Error(ErrorCode::kInvalidSize, "gridworld needs width and height >= 2");
  }
  if (o.horizon == 0) throw Error(ErrorCode::kInvalidSize, "horizon must be >= 1");
  if (o.walls.empty()) o.walls = TwoRoomWalls(o.width, o.height);
  if (o.goal.x < 0) o.goal = {o.width - 1, 0};

  auto inside = [&](Cell c) {
    return c.x >= 0 && c.x < o.width && c.y >= 0 && c.y < o.height;
  };
  if (!inside(o.start) || !inside(o.goal)) {
    throw Error(ErrorCode::kInvalidArgument, "start and goal must lie on the grid");
  }
  std::vector<bool> blocked(static_cast<std::size_t>(o.width) * o.height, false);
  for (const Cell& w : o.walls) {
    if (!inside(w)) throw Error(ErrorCode::kInvalidArgument, "wall outside the grid");
    blocked[static_cast<std::size_t>(w.y) * o.width + w.x] = true;
  }
  auto idx = [&](Cell c) { return static_cast<std::size_t>(c.y) * o.width + c.x; };
  if (blocked[idx(o.start)] || blocked[idx(o.goal)]) {
    throw Error(ErrorCode::kUnreachableGoal, "start or goal is a wall");
  }

  // Breadth-first search from the start.
  std::vector<bool> seen(blocked.size(), false);
  std::queue<Cell> frontier;
  frontier.push(o.start);
  seen[idx(o.start)] = true;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1},
                   Cell{c.x, c.y - 1}}) {
      if (inside(n) && !blocked[idx(n)] && !seen[idx(n)]) {
        seen[idx(n)] = true;
        frontier.push(n);
      }
    }
  }
  if (!seen[idx(o.goal)]) {
    throw Error(ErrorCode::kUnreachableGoal, "goal cannot be reached from the start");
  }
  return std::make_unique<Gridworld>(o);
}

std::unique_ptr<Environment> MakeSparsePointMass(double goal_radius,
                                                 std::uint64_t /*seed*/) {
  if (!(goal_radius > 0.0 && goal_radius < 0.5)) {
    throw Error(ErrorCode::kInvalidRadius, "goal radius must lie in (0, 0.5)");
  }
  return std::make_unique<PointMass>(goal_radius);
}

Cell DecodeGridImage(const Observation& image, int width, int height) {
  if (image.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "image size does not match the grid");
  }
  const auto it = std::max_element(image.begin(), image.end());
  const auto i = static_cast<int>(it - image.begin());
  return {i % width, i / width};
}

}  // namespace hashcount
