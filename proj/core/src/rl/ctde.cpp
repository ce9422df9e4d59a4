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

#include <limits>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/rl/drqn.hpp"
#include "rnnprove/rl/replay_buffer.hpp"

namespace rnnprove::rl {

std::int64_t bp_state_key(const env::BoxPushingEnv& env, const env::BpState& s) {
  const std::int64_t w = env.width();
  const std::int64_t h = env.height();
  std::int64_t key = 0;
  for (std::size_t i = 0; i < env::kBpAgents; ++i) key = (key * w + s.agents[i].x) * h + s.agents[i].y;
  key = (key * w + s.box.x) * h + s.box.y;
  for (std::size_t i = 0; i < env::kBpAgents; ++i) key = key * 4 + static_cast<int>(s.facing[i]);
  return key;
}

JointEpisode run_bp_episode(const env::BoxPushingEnv& env,
                            std::span<const nn::RecurrentPolicy* const> policies, double epsilon,
                            Rng& rng) {
  if (policies.size() != env::kBpAgents) throw InvalidArgument("box pushing needs two policies");
  JointEpisode joint;
  joint.agents.resize(env::kBpAgents);
  env::BpState state = env.reset();
  std::array<nn::Vector, env::kBpAgents> obs;
  std::array<nn::Vector, env::kBpAgents> h;
  for (std::size_t i = 0; i < env::kBpAgents; ++i) {
    obs[i] = env.observe(state, i);
    h[i].assign(policies[i]->hidden_dim(), 0.0);
  }
  while (!state.terminal()) {
    const nn::Vector code = env.encode_state(state);
    const std::int64_t key = bp_state_key(env, state);
    env::JointAction action{};
    std::array<nn::Vector, env::kBpAgents> h_next;
    for (std::size_t i = 0; i < env::kBpAgents; ++i) {
      Episode& ep = joint.agents[i];
      ep.observations.push_back(obs[i]);
      ep.hidden_before.push_back(h[i]);
      ep.state_codes.push_back(code);
      ep.state_keys.push_back(key);
      nn::PolicyStep s = nn::forward_policy(*policies[i], h[i], obs[i]);
      action[i] = select_action(s.q_values, epsilon, rng);
      h_next[i] = std::move(s.h_next);
    }
    env::BpStep res = env.step(state, action);
    for (std::size_t i = 0; i < env::kBpAgents; ++i) {
      joint.agents[i].actions.push_back(action[i]);
      joint.agents[i].rewards.push_back(res.reward);
      h[i] = std::move(h_next[i]);
      obs[i] = std::move(res.observations[i]);
    }
    state = res.state;
  }
  for (std::size_t i = 0; i < env::kBpAgents; ++i) {
    joint.agents[i].observations.push_back(obs[i]);
    joint.agents[i].cause = state.cause;
  }
  return joint;
}

TrainResult train_ctde_bp(const env::BoxPushingEnv& env, const TrainConfig& config,
                          const EpisodeHook& hook) {
  config.validate();
  Rng init_rng(derive_seed(config.seed, 1));
  Rng rollout_rng(derive_seed(config.seed, 2));
  Rng batch_rng(derive_seed(config.seed, 3));
  TrainResult result;
  for (std::size_t i = 0; i < env::kBpAgents; ++i)
    result.agents.push_back(
        make_bundle(env::BoxPushingEnv::kObsDim, env::kBpActions, config, init_rng));
  ReplayBuffer<JointEpisode> buffer(config.buffer_capacity);
  for (std::size_t e = 0; e < config.episodes; ++e) {
    const double eps = config.epsilon_at(e);
    std::array<const nn::RecurrentPolicy*, env::kBpAgents> live{&result.agents[0].online,
                                                                &result.agents[1].online};
    JointEpisode ep = run_bp_episode(env, live, eps, rollout_rng);
    if (hook) hook(e, ep);
    TrainLogRow row{e, ep.total_return(), eps, std::numeric_limits<double>::quiet_NaN()};
    buffer.push(std::move(ep));
    if (buffer.size() >= config.batch_size) {
      const auto idx = buffer.sample_indices(config.batch_size, batch_rng);
      double loss = 0.0;
      for (std::size_t i = 0; i < env::kBpAgents; ++i) {
        std::vector<const Episode*> batch;
        for (std::size_t k : idx) batch.push_back(&buffer.at(k).agents[i]);
        loss += drqn_update(result.agents[i], batch, config);
      }
      row.loss = loss / static_cast<double>(env::kBpAgents);
    }
    result.log.push_back(row);
  }
  return result;
}

EvalSummary evaluate_bp(const env::BoxPushingEnv& env,
                        std::span<const nn::RecurrentPolicy* const> policies,
                        std::size_t episodes) {
  EvalSummary s;
  Rng unused(0);
  double total = 0.0;
  for (std::size_t i = 0; i < episodes; ++i) {
    const JointEpisode ep = run_bp_episode(env, policies, 0.0, unused);
    total += ep.total_return();
    if (ep.agents[0].cause == env::TerminalCause::kGoal) ++s.successes;
  }
  s.episodes = episodes;
  s.mean_return = episodes ? total / static_cast<double>(episodes) : 0.0;
  return s;
}

}  // namespace rnnprove::rl
