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
#include <map>
#include <vector>

#include "rnnprove/envs/nav.hpp"
#include "rnnprove/feasibility/dataset.hpp"
#include "rnnprove/tensor_nn/policy.hpp"

namespace rnnprove::baseline {

struct EnumerationConfig {
  // Maximum number of expanded decision points.
  std::size_t cap = 10'000'000;
  // Histories reaching the same cell with hidden states equal after
  // rounding to this quantum share one subtree.
  double merge_quantum = 1e-9;
};

// Every (cell, hidden state) pair at which the policy takes a decision
// along some action sequence of length <= T from the start. The hidden
// state is the recurrent input at the decision.
struct ExactHistorySet {
  std::size_t hidden_dim = 0;
  int horizon = 0;
  std::map<env::Cell, std::vector<nn::Vector>> hidden;
  std::size_t expanded = 0;                // decision points visited
  std::vector<std::size_t> per_depth;      // distinct pairs by shallowest depth

  std::size_t size() const;
  const std::vector<nn::Vector>& at(env::Cell c) const;
  // Label-1 rows with source "exact", states encoded as the environment does.
  feas::FeasibilityDataset to_dataset(const env::NavEnv& env) const;
};

// Depth-first over all action sequences from the start state, pruning
// terminal transitions. Throws CapExceeded, carrying the depth with the
// most expansions, when more than config.cap decision points are visited.
ExactHistorySet exact_history_enumeration(const env::NavEnv& env,
                                          const nn::RecurrentPolicy& policy, int horizon,
                                          const EnumerationConfig& config = {});

}  // namespace rnnprove::baseline
