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

// Sparse-reward episodic environments with deterministic dynamics. Each
// returns +1 only at its goal, which ends the episode; all other rewards
// are 0. Episodes are also cut at the horizon (`truncated`).
//
// One instance serves one rollout worker; instances are not thread-safe.

#ifndef HASHCOUNT_ENV_H_
#define HASHCOUNT_ENV_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace hashcount {

using Observation = std::vector<double>;

struct EnvSpec {
  // {n} for vector observations, {height, width, channels} for images.
  std::vector<std::size_t> observation_shape;
  std::size_t action_count = 0;
  std::size_t horizon = 0;

  std::size_t observation_size() const;
  bool is_image() const { return observation_shape.size() == 3; }
};

struct StepResult {
  Observation observation;
  double reward = 0.0;  // environment reward only, never a bonus
  bool done = false;
  bool truncated = false;  // done because the horizon was reached
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual Observation Reset(std::uint64_t episode_seed) = 0;
  virtual StepResult Step(std::size_t action) = 0;
  virtual std::unique_ptr<Environment> Clone() const = 0;

  // Episode is over once Step reported done.
  virtual bool done() const = 0;
};

// States 0..n-1 starting at 0; action 0 moves left (floored at 0), action 1
// moves right. Reaching n-1 pays +1 and ends the episode. Horizon 4n.
// Observations are one-hot state vectors.
std::unique_ptr<Environment> MakeChainMdp(std::size_t n_states,
                                          std::uint64_t seed);

enum class GridObservation { kPosition, kImage };

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct GridworldOptions {
  int width = 10;
  int height = 10;
  std::vector<Cell> walls;  // defaults to TwoRoomWalls when empty
  Cell start{0, 0};
  Cell goal{-1, -1};  // defaults to (width-1, 0)
  std::size_t horizon = 50;
  GridObservation observation = GridObservation::kPosition;
};

// Vertical wall at x = width/2 with a single door in the last row.
std::vector<Cell> TwoRoomWalls(int width, int height);

inline constexpr int kGridAgentValue = 255;
inline constexpr int kGridWallValue = 128;

// Actions: 0 up (y+1), 1 down (y-1), 2 left, 3 right. Moving into a wall or
// off the grid leaves the agent in place. Position observations are the
// (x, y) pair; image observations are height x width x 1 with the agent
// cell 255, walls 128, everything else 0 (row index y, column index x).
// Construction fails with kUnreachableGoal if no path exists.
std::unique_ptr<Environment> MakeSparseGridworld(const GridworldOptions& options,
                                                 std::uint64_t seed);

// State (x, y, vx, vy) in [-1, 1]^2 x [-0.2, 0.2]^2, starting at
// (-0.9, -0.9) at rest. Action a adds (+-0.05, +-0.05) to the velocity:
// 0 (+,+), 1 (+,-), 2 (-,+), 3 (-,-). Positions are clamped to the box;
// velocity keeps its value at the wall. Entering the disc of `goal_radius`
// around (0.9, 0.9) pays +1. Horizon 200.
inline constexpr double kDefaultGoalRadius = 0.04;
std::unique_ptr<Environment> MakeSparsePointMass(double goal_radius,
                                                 std::uint64_t seed);

// Cell encoded by a gridworld image observation (the agent pixel).
Cell DecodeGridImage(const Observation& image, int width, int height);

}  // namespace hashcount

#endif  // HASHCOUNT_ENV_H_
