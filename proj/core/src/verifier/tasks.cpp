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

#include "rnnprove/verifier/tasks.hpp"

#include "rnnprove/common/errors.hpp"

namespace rnnprove::verify {

VerificationTask nav_task(const rl::TrainedRun& run, env::Cell cell) {
  if (!run.grid) throw InvalidArgument("run '" + run.task.name + "' is not a navigation task");
  if (run.agents.empty()) throw InvalidArgument("run has no trained agents");
  const env::NavEnv nav = run.nav_env();
  const env::GridSpec& grid = *run.grid;
  if (!grid.in_bounds(cell) || grid.is_obstacle(cell) || cell == grid.goal)
    throw InvalidArgument("cell (" + std::to_string(cell.x) + ", " + std::to_string(cell.y) +
                          ") is not a decision cell");
  env::NavState state;
  state.agent = cell;
  VerificationTask t;
  t.policy = &run.agents.front().online;
  t.observation = nav.observe(cell);
  t.state_code = nav.encode_state(state);
  t.behavior = nav.desired_behavior(state);
  t.cell = cell;
  t.name = run.task.name + " cell (" + std::to_string(cell.x) + ", " + std::to_string(cell.y) +
           ")";
  return t;
}

std::vector<VerificationTask> nav_all_tasks(const rl::TrainedRun& run) {
  if (!run.grid) throw InvalidArgument("run '" + run.task.name + "' is not a navigation task");
  const env::NavEnv nav = run.nav_env();
  const std::vector<int> dist = env::bfs_distances(*run.grid, run.grid->start);
  std::vector<VerificationTask> out;
  for (const env::Cell& c : nav.decision_cells()) {
    if (dist[run.grid->index(c)] < 0) continue;
    env::NavState s;
    s.agent = c;
    const auto unsafe = nav.unsafe_actions(s);
    if (unsafe.empty() || unsafe.size() == env::kNavActions) continue;
    out.push_back(nav_task(run, c));
  }
  return out;
}

VerificationTask bp_task(const rl::TrainedRun& run, std::size_t agent) {
  if (!run.bp) throw InvalidArgument("run '" + run.task.name + "' is not a box pushing task");
  if (agent >= run.agents.size())
    throw InvalidArgument("agent " + std::to_string(agent) + " out of range");
  const env::BoxPushingEnv bp = run.bp_env();
  const env::BpState state = bp.verification_state();
  VerificationTask t;
  t.policy = &run.agents[agent].online;
  t.observation = bp.observe(state, agent);
  t.state_code = bp.encode_state(state);
  t.behavior = bp.desired_behavior(state, agent);
  t.agent = agent;
  t.name = run.task.name + " agent " + std::to_string(agent);
  return t;
}

}  // namespace rnnprove::verify
