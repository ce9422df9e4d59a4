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

#include <optional>
#include <string>
#include <vector>

#include "rnnprove/envs/box_pushing.hpp"
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/rl/config.hpp"
#include "rnnprove/rl/drqn.hpp"

namespace rnnprove::rl {

// Everything a trained run leaves behind: the task, its exact layout, the
// resolved config and one bundle per agent.
struct TrainedRun {
  TaskSpec task;
  TrainConfig config;
  std::string config_digest;
  std::optional<env::GridSpec> grid;  // navigation tasks
  std::optional<env::BpSpec> bp;      // box pushing tasks
  int horizon = 0;
  std::vector<PolicyBundle> agents;

  env::NavEnv nav_env() const;
  env::BoxPushingEnv bp_env() const;
};

std::string save_run_text(const TrainedRun& run);
TrainedRun load_run_text(const std::string& text);
TrainedRun load_run_file(const std::string& path);

}  // namespace rnnprove::rl
