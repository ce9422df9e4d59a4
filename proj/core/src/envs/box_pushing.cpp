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

#include "rnnprove/envs/box_pushing.hpp"

#include <deque>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::env {

std::array<Cell, kBpAgents> BpSpec::push_positions() const {
  return {Cell{box.x, box.y + 1}, Cell{box.x + 1, box.y + 1}};
}

BpSpec make_bp_spec(int width, int height) {
  if (width < 4 || height < 4) throw InvalidArgument("box pushing grid must be at least 4x4");
  BpSpec s;
  s.width = width;
  s.height = height;
  s.box = {width / 2 - 1, height / 2};
  s.starts = {Cell{0, height - 1}, Cell{width - 1, height - 1}};
  return s;
}

BoxPushingEnv::BoxPushingEnv(BpSpec spec, int horizon)
    : spec_(spec), horizon_(horizon > 0 ? horizon : 4 * (spec.width + spec.height)) {
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < spec_.width && c.y < spec_.height; };
  const auto pushes = spec_.push_positions();
  if (!inside(spec_.box) || !inside(Cell{spec_.box.x + 1, spec_.box.y}) || !inside(pushes[0]) ||
      spec_.box.y == 0)
    throw InvalidArgument("box must fit inside the grid below the goal row with room to push");
  for (const Cell& c : spec_.starts)
    if (!inside(c) || (c.y == spec_.box.y && (c.x == spec_.box.x || c.x == spec_.box.x + 1)))
      throw InvalidArgument("agent start outside the grid or on the box");
  if (spec_.starts[0] == spec_.starts[1]) throw InvalidArgument("agents must start on distinct cells");
}

BpState BoxPushingEnv::reset() const {
  BpState s;
  s.agents = spec_.starts;
  s.facing = spec_.start_facing;
  s.box = spec_.box;
  return s;
}

bool BoxPushingEnv::is_box(const BpState& s, Cell c) const {
  return c.y == s.box.y && (c.x == s.box.x || c.x == s.box.x + 1);
}

std::vector<double> BoxPushingEnv::observe(const BpState& s, std::size_t agent) const {
  const Cell front = neighbor(s.agents[agent], s.facing[agent]);
  FrontContent k = FrontContent::kEmpty;
  if (front.x < 0 || front.y < 0 || front.x >= spec_.width || front.y >= spec_.height)
    k = FrontContent::kWall;
  else if (is_box(s, front))
    k = FrontContent::kBox;
  else if (front == s.agents[1 - agent])
    k = FrontContent::kTeammate;
  std::vector<double> obs(kObsDim, 0.0);
  obs[static_cast<std::size_t>(k)] = 1.0;
  return obs;
}

std::optional<int> BoxPushingEnv::path_length(const BpState& s, Cell from, Cell to,
                                              Cell blocked) const {
  auto free = [&](Cell c) {
    return c.x >= 0 && c.y >= 0 && c.x < spec_.width && c.y < spec_.height && !is_box(s, c) &&
           c != blocked;
  };
  if (!free(from) || !free(to)) return std::nullopt;
  std::vector<int> dist(static_cast<std::size_t>(spec_.width * spec_.height), -1);
  auto at = [&](Cell c) -> int& { return dist[static_cast<std::size_t>(c.y * spec_.width + c.x)]; };
  std::deque<Cell> queue{from};
  at(from) = 0;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    if (c == to) return at(c);
    for (int d = 0; d < 4; ++d) {
      const Cell n = neighbor(c, static_cast<Direction>(d));
      if (!free(n) || at(n) >= 0) continue;
      at(n) = at(c) + 1;
      queue.push_back(n);
    }
  }
  return std::nullopt;
}

BpStep BoxPushingEnv::step(const BpState& s, const JointAction& action) const {
  if (s.terminal()) throw StateError("step on a terminal box pushing state");
  for (std::size_t a : action)
    if (a >= kBpActions) throw InvalidArgument("box pushing action out of range");
  BpStep out;
  out.state = s;
  out.state.step = s.step + 1;
  const auto pushes = spec_.push_positions();
  std::array<Cell, kBpAgents> target = s.agents;
  for (std::size_t i = 0; i < kBpAgents; ++i) {
    const std::size_t a = action[i];
    if (a < 4) {
      const auto dir = static_cast<Direction>(a);
      out.state.facing[i] = dir;
      const Cell n = neighbor(s.agents[i], dir);
      const bool inside = n.x >= 0 && n.y >= 0 && n.x < spec_.width && n.y < spec_.height;
      if (inside && !is_box(s, n)) target[i] = n;
    } else if (a == kBpNavigateToBox) {
      if (s.agents[i] == pushes[i]) {
        out.state.facing[i] = Direction::kUp;
      } else if (auto len = path_length(s, s.agents[i], pushes[i], s.agents[1 - i])) {
        target[i] = pushes[i];
        out.state.facing[i] = Direction::kUp;
        out.macro_moves[i] = *len;
      }
    }
  }
  // Moves into a teammate's current cell, or two moves into the same cell,
  // are blocked.
  const bool clash = target[0] == target[1] && target[0] != s.agents[0] && target[1] != s.agents[1];
  for (std::size_t i = 0; i < kBpAgents; ++i) {
    if (target[i] == s.agents[1 - i] || clash) {
      target[i] = s.agents[i];
      out.macro_moves[i] = 0;
    }
  }
  out.state.agents = target;

  const bool on_pushes = (s.agents[0] == pushes[0] && s.agents[1] == pushes[1]) ||
                         (s.agents[0] == pushes[1] && s.agents[1] == pushes[0]);
  const bool both_push = action[0] == kBpPush && action[1] == kBpPush;
  const bool facing_box =
      out.state.facing[0] == Direction::kUp && out.state.facing[1] == Direction::kUp;
  if (on_pushes && both_push && facing_box) {
    out.state.box.y = 0;  // slides until it hits the goal wall
    out.state.cause = TerminalCause::kGoal;
    out.reward = kGoalReward;
  } else {
    out.reward = kStepReward;
    if (out.state.step >= horizon_) out.state.cause = TerminalCause::kTimeout;
  }
  for (std::size_t i = 0; i < kBpAgents; ++i) out.observations[i] = observe(out.state, i);
  return out;
}

bool BoxPushingEnv::front_of_box(const BpState& s, std::size_t agent) const {
  const Cell below_left{s.box.x, s.box.y + 1};
  const Cell below_right{s.box.x + 1, s.box.y + 1};
  const Cell a = s.agents[agent];
  return (a == below_left || a == below_right) && s.facing[agent] == Direction::kUp;
}

BehaviorSpec BoxPushingEnv::desired_behavior(const BpState& s, std::size_t agent) const {
  if (agent >= kBpAgents) throw InvalidArgument("agent index out of range");
  if (!front_of_box(s, agent))
    throw InvalidArgument("agent " + std::to_string(agent) +
                          " is not in front of the box; verification is defined only there");
  return BehaviorSpec::require(kBpPush, kBpActions);
}

BpState BoxPushingEnv::verification_state() const {
  BpState s = reset();
  s.agents = spec_.push_positions();
  s.facing = {Direction::kUp, Direction::kUp};
  return s;
}

std::vector<double> BoxPushingEnv::encode_state(const BpState& s) const {
  const double sx = spec_.width - 1;
  const double sy = spec_.height - 1;
  return {s.agents[0].x / sx,
          s.agents[0].y / sy,
          s.agents[1].x / sx,
          s.agents[1].y / sy,
          s.box.x / sx,
          s.box.y / sy,
          static_cast<double>(s.facing[0]) / 3.0,
          static_cast<double>(s.facing[1]) / 3.0};
}

}  // namespace rnnprove::env
