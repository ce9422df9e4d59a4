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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rnnprove/common/rng.hpp"
#include "rnnprove/envs/box_pushing.hpp"
#include "rnnprove/envs/nav.hpp"
#include "rnnprove/rl/config.hpp"
#include "rnnprove/rl/episode.hpp"
#include "rnnprove/tensor_nn/adam.hpp"
#include "rnnprove/tensor_nn/policy.hpp"

namespace rnnprove::rl {

struct PolicyBundle {
  nn::RecurrentPolicy online;
  nn::RecurrentPolicy target;
  nn::Adam optimizer;
  std::int64_t train_steps = 0;
};

PolicyBundle make_bundle(std::size_t obs_dim, std::size_t num_actions, const TrainConfig& config,
                         Rng& rng);

struct TrainLogRow {
  std::size_t episode = 0;
  double episode_return = 0.0;
  double epsilon = 0.0;
  double loss = 0.0;  // NaN before the first update
};

std::string training_log_csv(std::span<const TrainLogRow> rows);

// Regression targets for one episode given max_a Q_target at each next step
// (q_next_max[t] belongs to the decision after step t):
// y_t = r_t + gamma * q_next_max[t], except y_t = r_t on a terminal last step.
std::vector<double> td_targets_from_next(const Episode& episode,
                                         std::span<const double> q_next_max, double gamma);
// Unrolls `target` over the episode's observations to supply q_next_max.
std::vector<double> td_targets(const Episode& episode, const nn::RecurrentPolicy& target,
                               double gamma);

// One Adam step on the mean squared TD error over all steps of `batch`,
// backpropagated through time over full episodes, followed by a Polyak
// update of the target. Returns the loss; throws TrainingDiverged on NaN.
double drqn_update(PolicyBundle& bundle, std::span<const Episode* const> batch,
                   const TrainConfig& config);

// Epsilon-greedy action: uniform with probability epsilon, else greedy.
std::size_t select_action(std::span<const double> q_values, double epsilon, Rng& rng);

Episode run_nav_episode(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                        double epsilon, Rng& rng);
JointEpisode run_bp_episode(const env::BoxPushingEnv& env,
                            std::span<const nn::RecurrentPolicy* const> policies, double epsilon,
                            Rng& rng);

// Discrete state keys used for dataset bookkeeping.
std::int64_t nav_state_key(const env::GridSpec& grid, env::Cell cell);
std::int64_t bp_state_key(const env::BoxPushingEnv& env, const env::BpState& state);

struct TrainResult {
  std::vector<PolicyBundle> agents;
  std::vector<TrainLogRow> log;
};

// Optional observer invoked after every collected episode.
using EpisodeHook = std::function<void(std::size_t episode, const JointEpisode&)>;

TrainResult train_drqn(const env::NavEnv& env, const TrainConfig& config,
                       const EpisodeHook& hook = {});
// Independent recurrent Q-networks per agent trained on the shared reward;
// execution conditions each agent on its own observations only.
TrainResult train_ctde_bp(const env::BoxPushingEnv& env, const TrainConfig& config,
                          const EpisodeHook& hook = {});

struct EvalSummary {
  std::size_t episodes = 0;
  std::size_t successes = 0;
  double mean_return = 0.0;
  double success_rate() const { return episodes ? double(successes) / episodes : 0.0; }
};

EvalSummary evaluate_nav(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                         std::size_t episodes);
EvalSummary evaluate_bp(const env::BoxPushingEnv& env,
                        std::span<const nn::RecurrentPolicy* const> policies,
                        std::size_t episodes);

}  // namespace rnnprove::rl
