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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/rl/bundle_io.hpp"
#include "rnnprove/verifier/oracle.hpp"

namespace rnnprove::verify {

// One verification query: a policy, the observation at a fixed state and
// the behavior it must exhibit there. The policy is borrowed.
struct VerificationTask {
  const nn::RecurrentPolicy* policy = nullptr;
  nn::Vector observation;
  nn::Vector state_code;  // classifier conditioning input
  env::BehaviorSpec behavior;
  std::string name;
  std::optional<env::Cell> cell;  // navigation queries
  std::size_t agent = 0;

  std::size_t hidden_dim() const { return policy->hidden_dim(); }
  PolicyMargin margin() const { return PolicyMargin(*policy, observation, behavior); }
};

// Navigation query at `cell`, using the online network of agent 0.
VerificationTask nav_task(const rl::TrainedRun& run, env::Cell cell);
// One query per verifiable decision cell, row-major: reachable from the
// start, with at least one unsafe and one safe action.
std::vector<VerificationTask> nav_all_tasks(const rl::TrainedRun& run);
// Box pushing query for `agent` at the verification state.
VerificationTask bp_task(const rl::TrainedRun& run, std::size_t agent);

}  // namespace rnnprove::verify
