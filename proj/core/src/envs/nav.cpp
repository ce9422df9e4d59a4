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

#include "rnnprove/envs/nav.hpp"

#include "rnnprove/common/errors.hpp"

namespace rnnprove::env {

const char* terminal_cause_name(TerminalCause cause) {
  switch (cause) {
    case TerminalCause::kNone: return "none";
    case TerminalCause::kGoal: return "goal";
    case TerminalCause::kCollision: return "collision";
    case TerminalCause::kTimeout: return "timeout";
  }
  return "unknown";
}

NavEnv::NavEnv(GridSpec grid, int horizon)
    : grid_(std::move(grid)), horizon_(horizon > 0 ? horizon : 4 * (grid_.width + grid_.height)) {
  if (grid_.obstacles.size() != grid_.cell_count())
    throw InvalidArgument("grid obstacle map has wrong size");
}

NavState NavEnv::reset() const { return NavState{grid_.start, 0, TerminalCause::kNone}; }

CellContent NavEnv::content(Cell c) const {
  if (!grid_.in_bounds(c)) return CellContent::kWall;
  if (grid_.is_obstacle(c)) return CellContent::kObstacle;
  if (c == grid_.goal) return CellContent::kGoal;
  return CellContent::kFree;
}

std::vector<double> NavEnv::observe(Cell c) const {
  std::vector<double> obs(kObsDim, 0.0);
  for (int d = 0; d < 4; ++d) {
    const auto k = static_cast<std::size_t>(content(neighbor(c, static_cast<Direction>(d))));
    obs[static_cast<std::size_t>(d) * 4 + k] = 1.0;
  }
  return obs;
}

NavStep NavEnv::step(const NavState& state, std::size_t action) const {
  if (state.terminal()) throw StateError("step on a terminal navigation state");
  if (action >= kNavActions) throw InvalidArgument("navigation action out of range");
  NavStep out;
  out.state = state;
  out.state.step = state.step + 1;
  const Cell next = neighbor(state.agent, static_cast<Direction>(action));
  const CellContent c = content(next);
  if (c == CellContent::kWall || c == CellContent::kObstacle) {
    out.state.cause = TerminalCause::kCollision;
    out.reward = kCollisionReward;
  } else {
    out.state.agent = next;
    if (next == grid_.goal) {
      out.state.cause = TerminalCause::kGoal;
      out.reward = kGoalReward;
    } else {
      out.reward = kStepReward;
      if (out.state.step >= horizon_) out.state.cause = TerminalCause::kTimeout;
    }
  }
  out.observation = observe(out.state.agent);
  return out;
}

std::vector<std::size_t> unsafe_actions(const GridSpec& grid, const NavState& state) {
  std::vector<std::size_t> unsafe;
  for (std::size_t a = 0; a < kNavActions; ++a) {
    const Cell n = neighbor(state.agent, static_cast<Direction>(a));
    if (!grid.in_bounds(n) || grid.is_obstacle(n)) unsafe.push_back(a);
  }
  return unsafe;
}

std::vector<std::size_t> NavEnv::unsafe_actions(const NavState& state) const {
  return env::unsafe_actions(grid_, state);
}

BehaviorSpec NavEnv::desired_behavior(const NavState& state) const {
  if (state.terminal()) throw StateError("desired behavior queried on a terminal state");
  return BehaviorSpec::avoid(unsafe_actions(state), kNavActions);
}

std::vector<double> NavEnv::encode_cell(Cell c) const {
  const double sx = grid_.width > 1 ? grid_.width - 1 : 1;
  const double sy = grid_.height > 1 ? grid_.height - 1 : 1;
  return {c.x / sx, c.y / sy};
}

std::vector<double> NavEnv::encode_state(const NavState& state) const {
  return encode_cell(state.agent);
}

std::vector<Cell> NavEnv::decision_cells() const {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < grid_.cell_count(); ++i) {
    const Cell c = grid_.cell(i);
    if (!grid_.is_obstacle(c) && c != grid_.goal) cells.push_back(c);
  }
  return cells;
}

}  // namespace rnnprove::env
