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
#include <span>

#include "rnnprove/common/rng.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"

namespace rnnprove::nn {

// GRU memory followed by an MLP Q-head: h' = gru(h, o), q = head(h').
struct RecurrentPolicy {
  GruCell gru;
  Mlp head;

  std::size_t obs_dim() const { return gru.input_dim(); }
  std::size_t hidden_dim() const { return gru.hidden_dim(); }
  std::size_t num_actions() const { return head.output_dim(); }
  void validate() const;
};

struct PolicyStep {
  Vector q_values;
  Vector h_next;
};

PolicyStep forward_policy(const RecurrentPolicy& policy,
                          std::span<const double> h_prev,
                          std::span<const double> obs);

// Greedy action with ties resolved to the lowest index.
std::size_t greedy_action(std::span<const double> q_values);

// hidden_layers = sizes of the MLP hidden layers (ReLU); identity output.
RecurrentPolicy make_policy(std::size_t obs_dim, std::size_t hidden_dim,
                            std::span<const std::size_t> hidden_layers,
                            std::size_t num_actions, Rng& rng);

// target <- omega * target + (1 - omega) * online, elementwise.
void polyak_update(RecurrentPolicy& target, const RecurrentPolicy& online,
                   double omega);

}  // namespace rnnprove::nn
