// Copyright 2026 The rnnprove Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/envs/grid.hpp"

namespace rnnprove::env {

inline constexpr std::size_t kNavActions = 4;  // up, right, down, left
enum class TerminalCause { kNone, kGoal, kCollision, kTimeout };
const char* terminal_cause_name(TerminalCause cause);

struct NavState {
  Cell agent;
  int step = 0;
  TerminalCause cause = TerminalCause::kNone;
  bool terminal() const { return cause != TerminalCause::kNone; }
  auto operator<=>(const NavState&) const = default;
};

struct NavStep {
  NavState state;
  double reward = 0.0;
  std::vector<double> observation;
};

// Contents categories of an observed cell.
enum class CellContent { kFree = 0, kObstacle = 1, kGoal = 2, kWall = 3 };

inline constexpr double kGoalReward = 1.0;
inline constexpr double kCollisionReward = -1.0;
inline constexpr double kStepReward = -0.01;

// Single-agent partially observable navigation. The agent sees only the
// four cells adjacent to its position (up, right, down, left), each
// one-hot encoded over {free, obstacle, goal, wall}.
class NavEnv {
 public:
  static constexpr std::size_t kObsDim = 16;
  static constexpr std::size_t kStateDim = 2;

  // horizon <= 0 selects the default 4 * (width + height).
  explicit NavEnv(GridSpec grid, int horizon = 0);

  const GridSpec& grid() const { return grid_; }
  int horizon() const { return horizon_; }

  NavState reset() const;
  CellContent content(Cell c) const;
  std::vector<double> observe(Cell c) const;
  NavStep step(const NavState& state, std::size_t action) const;

  // Actions whose next cell is an obstacle or outside the grid.
  std::vector<std::size_t> unsafe_actions(const NavState& state) const;
  BehaviorSpec desired_behavior(const NavState& state) const;

  // Normalized (x, y) coordinates; the classifier's view of the state.
  std::vector<double> encode_state(const NavState& state) const;
  std::vector<double> encode_cell(Cell c) const;
  // Free, non-goal cells: every cell where the agent can make a decision.
  std::vector<Cell> decision_cells() const;

 private:
  GridSpec grid_;
  int horizon_;
};

std::vector<std::size_t> unsafe_actions(const GridSpec& grid, const NavState& state);

}  // namespace rnnprove::env
