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
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "rnnprove/envs/box_pushing.hpp"
#include "rnnprove/envs/nav.hpp"
#include "rnnprove/feasibility/dataset.hpp"
#include "rnnprove/rl/episode.hpp"
#include "rnnprove/tensor_nn/policy.hpp"

namespace rnnprove::feas {

struct CollectConfig {
  // Hidden states closer than this in every coordinate count as one.
  double dedupe_quantum = 1e-9;
  // Maximum stored pairs per distinct state; 0 = unlimited.
  std::size_t per_state_cap = 0;
};

// Accumulates (state, hidden-before-action) pairs, one per decision.
class PairCollector {
 public:
  PairCollector(std::size_t state_dim, std::size_t hidden_dim, CollectConfig config = {});

  // Returns true when the pair was stored (not a duplicate, under cap).
  bool add(std::span<const double> state, std::span<const double> hidden);
  void add_episode(const rl::Episode& episode);

  std::size_t size() const { return dataset_.rows.size(); }
  std::size_t distinct_states() const { return per_state_.size(); }
  std::size_t count_for(std::span<const double> state) const;
  const FeasibilityDataset& dataset() const { return dataset_; }

 private:
  CollectConfig config_;
  FeasibilityDataset dataset_;
  std::map<nn::Vector, std::size_t> per_state_;
  std::set<std::pair<nn::Vector, std::vector<std::int64_t>>> seen_;
};

// Collection by replaying the trained policy under the training exploration
// schedule: within a round of `episodes` episodes, epsilon is annealed
// linearly from epsilon_start to epsilon_end. Rounds repeat until at least
// `target_pairs` distinct pairs are stored or `max_episodes` have run.
struct ReplayConfig {
  std::size_t episodes = 20000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::uint64_t seed = 7;
  // Enough positives for a 1:1 dataset whose 20% held-out part reaches
  // M = 10368; 0 runs exactly one round.
  std::size_t target_pairs = 26000;
  std::size_t max_episodes = 5'000'000;
  CollectConfig collect;
  double epsilon_at(std::size_t k) const;
};

FeasibilityDataset collect_nav(const env::NavEnv& env, const nn::RecurrentPolicy& policy,
                               const ReplayConfig& config);
// Pairs for `agent` from joint rollouts of both policies.
FeasibilityDataset collect_bp(const env::BoxPushingEnv& env,
                              std::span<const nn::RecurrentPolicy* const> policies,
                              std::size_t agent, const ReplayConfig& config);

}  // namespace rnnprove::feas
