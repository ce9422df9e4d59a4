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
#include <optional>
#include <vector>

#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/envs/nav.hpp"

namespace rnnprove::env {

// Per-agent actions: four single steps, a macro that walks the agent along a
// shortest path to its designated push position, and push.
inline constexpr std::size_t kBpActions = 6;
inline constexpr std::size_t kBpNavigateToBox = 4;
inline constexpr std::size_t kBpPush = 5;
inline constexpr std::size_t kBpAgents = 2;

// Layout: a two-cell box occupying (box.x, box.y) and (box.x + 1, box.y);
// the goal is the top row. Push positions are the two cells directly below
// the box; agent i is designated to push_positions()[i].
struct BpSpec {
  int width = 10;
  int height = 10;
  Cell box;
  std::array<Cell, kBpAgents> starts;
  std::array<Direction, kBpAgents> start_facing{Direction::kUp, Direction::kUp};

  std::array<Cell, kBpAgents> push_positions() const;
  bool operator==(const BpSpec&) const = default;
};

// Default layout for a width x height grid: box near the center, agents in
// the bottom corners facing up.
BpSpec make_bp_spec(int width, int height);

struct BpState {
  std::array<Cell, kBpAgents> agents;
  std::array<Direction, kBpAgents> facing{};
  Cell box;
  int step = 0;
  TerminalCause cause = TerminalCause::kNone;
  bool terminal() const { return cause != TerminalCause::kNone; }
  auto operator<=>(const BpState&) const = default;
};

using JointAction = std::array<std::size_t, kBpAgents>;

struct BpStep {
  BpState state;
  double reward = 0.0;
  std::array<std::vector<double>, kBpAgents> observations;
  // Number of grid moves the navigate macro made per agent (0 if unused).
  std::array<int, kBpAgents> macro_moves{0, 0};
};

enum class FrontContent { kEmpty = 0, kWall = 1, kBox = 2, kTeammate = 3 };

class BoxPushingEnv {
 public:
  static constexpr std::size_t kObsDim = 4;
  static constexpr std::size_t kStateDim = 8;

  explicit BoxPushingEnv(BpSpec spec, int horizon = 0);

  const BpSpec& spec() const { return spec_; }
  int horizon() const { return horizon_; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }

  BpState reset() const;
  bool is_box(const BpState& s, Cell c) const;
  // One-hot content of the cell in front of `agent`.
  std::vector<double> observe(const BpState& s, std::size_t agent) const;
  BpStep step(const BpState& s, const JointAction& action) const;

  // Agent stands on a push position facing the box.
  bool front_of_box(const BpState& s, std::size_t agent) const;
  // Required push when front_of_box; throws InvalidArgument otherwise.
  BehaviorSpec desired_behavior(const BpState& s, std::size_t agent) const;
  // Both agents on their designated push positions facing the box.
  BpState verification_state() const;

  // Shortest path length from `from` to `to` avoiding box cells and
  // `blocked`; nullopt when unreachable.
  std::optional<int> path_length(const BpState& s, Cell from, Cell to, Cell blocked) const;

  std::vector<double> encode_state(const BpState& s) const;

 private:
  BpSpec spec_;
  int horizon_;
};

}  // namespace rnnprove::env
