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

#include "rnnprove/rl/drqn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/rl/replay_buffer.hpp"
#include "rnnprove/tensor_nn/parameters.hpp"
#include "rnnprove/tensor_nn/tape.hpp"

namespace rnnprove::rl {

double Episode::total_return() const { return std::accumulate(rewards.begin(), rewards.end(), 0.0); }

PolicyBundle make_bundle(std::size_t obs_dim, std::size_t num_actions, const TrainConfig& config,
                         Rng& rng) {
  PolicyBundle b;
  b.online = nn::make_policy(obs_dim, config.gru_hidden, config.mlp_hidden, num_actions, rng);
  b.target = b.online;
  return b;
}

std::string training_log_csv(std::span<const TrainLogRow> rows) {
  std::ostringstream out;
  out << "episode,return,epsilon,loss\n";
  for (const auto& r : rows) {
    out << r.episode << ',' << format_real(r.episode_return) << ',' << format_real(r.epsilon) << ',';
    if (std::isfinite(r.loss)) out << format_real(r.loss);
    out << '\n';
  }
  return out.str();
}

std::vector<double> td_targets_from_next(const Episode& episode,
                                         std::span<const double> q_next_max, double gamma) {
  const std::size_t n = episode.length();
  if (q_next_max.size() != n) throw DimensionError("td_targets: one next-value per step required");
  std::vector<double> y(n);
  for (std::size_t t = 0; t < n; ++t) {
    const bool terminal = t + 1 == n && episode.ends_in_terminal();
    y[t] = terminal ? episode.rewards[t] : episode.rewards[t] + gamma * q_next_max[t];
  }
  return y;
}

std::vector<double> td_targets(const Episode& episode, const nn::RecurrentPolicy& target,
                               double gamma) {
  const std::size_t n = episode.length();
  if (episode.observations.size() != n + 1)
    throw DimensionError("td_targets: episode must store the final observation");
  std::vector<double> next(n, 0.0);
  nn::Vector h(target.hidden_dim(), 0.0);
  for (std::size_t t = 0; t <= n; ++t) {
    nn::PolicyStep s = nn::forward_policy(target, h, episode.observations[t]);
    if (t > 0) next[t - 1] = *std::max_element(s.q_values.begin(), s.q_values.end());
    h = std::move(s.h_next);
  }
  return td_targets_from_next(episode, next, gamma);
}

double drqn_update(PolicyBundle& bundle, std::span<const Episode* const> batch,
                   const TrainConfig& config) {
  if (batch.empty()) throw InvalidArgument("drqn_update: empty batch");
  nn::RecurrentPolicy& online = bundle.online;
  const std::size_t rows = batch.size();
  const std::size_t obs_dim = online.obs_dim();
  std::size_t horizon = 0;
  std::size_t steps = 0;
  std::vector<std::vector<double>> targets(rows);
  for (std::size_t b = 0; b < rows; ++b) {
    horizon = std::max(horizon, batch[b]->length());
    steps += batch[b]->length();
    targets[b] = td_targets(*batch[b], bundle.target, config.gamma);
  }
  if (steps == 0) throw InvalidArgument("drqn_update: batch has no transitions");

  nn::Tape tape;
  auto h = tape.constant(nn::Matrix(rows, online.hidden_dim(), 0.0));
  std::vector<nn::Tape::Var> losses;
  losses.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    nn::Matrix x(rows, obs_dim, 0.0);
    std::vector<double> y(rows, 0.0);
    std::vector<double> mask(rows, 0.0);
    std::vector<std::size_t> cols(rows, 0);
    for (std::size_t b = 0; b < rows; ++b) {
      const Episode& ep = *batch[b];
      if (t >= ep.length()) continue;
      nn::require_dims(ep.observations[t].size() == obs_dim, "drqn_update: observation width");
      std::copy(ep.observations[t].begin(), ep.observations[t].end(), x.row(b).begin());
      y[b] = targets[b][t];
      mask[b] = 1.0;
      cols[b] = ep.actions[t];
    }
    h = tape.gru(h, tape.constant(std::move(x)), online.gru);
    auto q = tape.mlp(h, online.head);
    losses.push_back(tape.masked_mse(tape.gather(q, std::move(cols)), std::move(y),
                                     std::move(mask), static_cast<double>(steps)));
  }
  auto loss = tape.sum(losses);
  const double value = tape.value(loss)(0, 0);
  if (!std::isfinite(value))
    throw TrainingDiverged("DRQN loss became non-finite at training step " +
                           std::to_string(bundle.train_steps));
  const nn::Gradients grads = tape.backward(loss);
  const auto params = nn::parameters(online);
  bundle.optimizer.update(params, grads, config.lr);
  nn::polyak_update(bundle.target, online, config.polyak);
  ++bundle.train_steps;
  return value;
}

std::size_t select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
  if (epsilon > 0.0 && rng.uniform() < epsilon) return rng.below(q_values.size());
  return nn::greedy_action(q_values);
}

std::int64_t nav_state_key(const env::GridSpec& grid, env::Cell cell) {
  return static_cast<std::int64_t>(grid.index(cell));
}

Episode run_nav_episode(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                        double epsilon, Rng& rng) {
  Episode ep;
  env::NavState state = env.reset();
  nn::Vector obs = env.observe(state.agent);
  nn::Vector h(policy.hidden_dim(), 0.0);
  while (!state.terminal()) {
    ep.observations.push_back(obs);
    ep.hidden_before.push_back(h);
    ep.state_codes.push_back(env.encode_state(state));
    ep.state_keys.push_back(nav_state_key(env.grid(), state.agent));
    nn::PolicyStep s = nn::forward_policy(policy, h, obs);
    const std::size_t a = select_action(s.q_values, epsilon, rng);
    env::NavStep res = env.step(state, a);
    ep.actions.push_back(a);
    ep.rewards.push_back(res.reward);
    h = std::move(s.h_next);
    state = res.state;
    obs = std::move(res.observation);
  }
  ep.observations.push_back(obs);
  ep.cause = state.cause;
  return ep;
}

TrainResult train_drqn(const env::NavEnv& env, const TrainConfig& config,
                       const EpisodeHook& hook) {
  config.validate();
  Rng init_rng(derive_seed(config.seed, 1));
  Rng rollout_rng(derive_seed(config.seed, 2));
  Rng batch_rng(derive_seed(config.seed, 3));
  TrainResult result;
  result.agents.push_back(make_bundle(env::NavEnv::kObsDim, env::kNavActions, config, init_rng));
  PolicyBundle& bundle = result.agents.front();
  ReplayBuffer<Episode> buffer(config.buffer_capacity);
  for (std::size_t e = 0; e < config.episodes; ++e) {
    const double eps = config.epsilon_at(e);
    Episode ep = run_nav_episode(env, bundle.online, eps, rollout_rng);
    if (hook) hook(e, JointEpisode{{ep}});
    TrainLogRow row{e, ep.total_return(), eps, std::numeric_limits<double>::quiet_NaN()};
    buffer.push(std::move(ep));
    if (buffer.size() >= config.batch_size) {
      std::vector<const Episode*> batch;
      for (std::size_t i : buffer.sample_indices(config.batch_size, batch_rng))
        batch.push_back(&buffer.at(i));
      row.loss = drqn_update(bundle, batch, config);
    }
    result.log.push_back(row);
  }
  return result;
}

EvalSummary evaluate_nav(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                         std::size_t episodes) {
  EvalSummary s;
  Rng unused(0);
  double total = 0.0;
  for (std::size_t i = 0; i < episodes; ++i) {
    const Episode ep = run_nav_episode(env, policy, 0.0, unused);
    total += ep.total_return();
    if (ep.cause == env::TerminalCause::kGoal) ++s.successes;
  }
  s.episodes = episodes;
  s.mean_return = episodes ? total / static_cast<double>(episodes) : 0.0;
  return s;
}

}  // namespace rnnprove::rl
