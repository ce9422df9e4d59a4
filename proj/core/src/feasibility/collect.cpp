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

#include "rnnprove/feasibility/collect.hpp"

#include <cmath>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/rl/drqn.hpp"

namespace rnnprove::feas {

PairCollector::PairCollector(std::size_t state_dim, std::size_t hidden_dim, CollectConfig config)
    : config_(config) {
  if (!(config.dedupe_quantum > 0.0)) throw InvalidArgument("dedupe_quantum must be positive");
  dataset_.state_dim = state_dim;
  dataset_.hidden_dim = hidden_dim;
}

bool PairCollector::add(std::span<const double> state, std::span<const double> hidden) {
  if (state.size() != dataset_.state_dim || hidden.size() != dataset_.hidden_dim)
    throw DimensionError("PairCollector: pair width does not match the dataset");
  nn::Vector s(state.begin(), state.end());
  std::size_t& count = per_state_[s];
  if (config_.per_state_cap > 0 && count >= config_.per_state_cap) return false;
  std::vector<std::int64_t> key(hidden.size());
  for (std::size_t i = 0; i < hidden.size(); ++i)
    key[i] = std::llround(hidden[i] / config_.dedupe_quantum);
  if (!seen_.emplace(s, std::move(key)).second) return false;
  ++count;
  dataset_.rows.push_back({std::move(s), nn::Vector(hidden.begin(), hidden.end()), 1,
                           PairSource::kRecorded});
  return true;
}

void PairCollector::add_episode(const rl::Episode& episode) {
  for (std::size_t t = 0; t < episode.length(); ++t)
    add(episode.state_codes[t], episode.hidden_before[t]);
}

std::size_t PairCollector::count_for(std::span<const double> state) const {
  auto it = per_state_.find(nn::Vector(state.begin(), state.end()));
  return it == per_state_.end() ? 0 : it->second;
}

double ReplayConfig::epsilon_at(std::size_t k) const {
  if (episodes <= 1) return epsilon_start;
  k %= episodes;
  const double f = static_cast<double>(k) / static_cast<double>(episodes - 1);
  return epsilon_start + (epsilon_end - epsilon_start) * f;
}

namespace {

void check(const ReplayConfig& config) {
  if (config.episodes == 0) throw InvalidArgument("collection needs at least one episode");
  if (config.max_episodes < config.episodes)
    throw InvalidArgument("max_episodes must cover at least one round of episodes");
}

bool done(const ReplayConfig& config, std::size_t k, std::size_t pairs) {
  if (k < config.episodes) return false;
  if (k >= config.max_episodes) return true;
  return config.target_pairs == 0 || pairs >= config.target_pairs;
}

}  // namespace

FeasibilityDataset collect_nav(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                               const ReplayConfig& config) {
  check(config);
  PairCollector collector(env::NavEnv::kStateDim, policy.hidden_dim(), config.collect);
  Rng rng(config.seed);
  for (std::size_t k = 0; !done(config, k, collector.size()); ++k)
    collector.add_episode(rl::run_nav_episode(env, policy, config.epsilon_at(k), rng));
  return collector.dataset();
}

FeasibilityDataset collect_bp(const env::BoxPushingEnv& env,
                              std::span<const nn::RecurrentPolicy* const> policies,
                              std::size_t agent, const ReplayConfig& config) {
  check(config);
  if (agent >= policies.size()) throw InvalidArgument("agent index out of range");
  PairCollector collector(env::BoxPushingEnv::kStateDim, policies[agent]->hidden_dim(),
                          config.collect);
  Rng rng(config.seed);
  for (std::size_t k = 0; !done(config, k, collector.size()); ++k)
    collector.add_episode(rl::run_bp_episode(env, policies, config.epsilon_at(k), rng).agents[agent]);
  return collector.dataset();
}

}  // namespace rnnprove::feas
