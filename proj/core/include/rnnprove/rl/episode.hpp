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

#include <cstdint>
#include <vector>

#include "rnnprove/envs/nav.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"

namespace rnnprove::rl {

// One agent's trajectory. Step t consumed observation o_t with hidden state
// h_t (the state before acting; h_0 = 0), chose a_t and received r_t.
// observations has one extra trailing entry: the observation after the last
// step, used to bootstrap episodes cut off by the horizon.
struct Episode {
  std::vector<nn::Vector> observations;
  std::vector<std::size_t> actions;
  std::vector<double> rewards;
  std::vector<nn::Vector> hidden_before;
  // Classifier-facing encoding of the environment state at each decision,
  // plus a discrete key identifying that state.
  std::vector<nn::Vector> state_codes;
  std::vector<std::int64_t> state_keys;
  env::TerminalCause cause = env::TerminalCause::kNone;

  std::size_t length() const { return actions.size(); }
  // True when the last transition ended the task (no bootstrap).
  bool ends_in_terminal() const {
    return cause == env::TerminalCause::kGoal || cause == env::TerminalCause::kCollision;
  }
  double total_return() const;
};

// Per-agent views of one cooperative episode; rewards are shared.
struct JointEpisode {
  std::vector<Episode> agents;
  double total_return() const { return agents.empty() ? 0.0 : agents[0].total_return(); }
};

}  // namespace rnnprove::rl
