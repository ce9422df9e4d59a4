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

#include "rnnprove/tensor_nn/policy.hpp"

#include <string>
#include <vector>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/tensor_nn/parameters.hpp"

namespace rnnprove::nn {

void RecurrentPolicy::validate() const {
  gru.validate();
  head.validate();
  require_dims(head.input_dim() == gru.hidden_dim(), "policy head input vs GRU hidden size");
}

PolicyStep forward_policy(const RecurrentPolicy& policy,
                          std::span<const double> h_prev,
                          std::span<const double> obs) {
  PolicyStep step;
  step.h_next = gru_step(policy.gru, h_prev, obs);
  step.q_values = policy.head.forward(step.h_next);
  return step;
}

std::size_t greedy_action(std::span<const double> q_values) {
  if (q_values.empty()) throw InvalidArgument("greedy_action: no actions");
  std::size_t best = 0;
  for (std::size_t a = 1; a < q_values.size(); ++a)
    if (q_values[a] > q_values[best]) best = a;
  return best;
}

RecurrentPolicy make_policy(std::size_t obs_dim, std::size_t hidden_dim,
                            std::span<const std::size_t> hidden_layers,
                            std::size_t num_actions, Rng& rng) {
  RecurrentPolicy p;
  p.gru = make_gru(obs_dim, hidden_dim, rng);
  std::vector<std::size_t> dims{hidden_dim};
  dims.insert(dims.end(), hidden_layers.begin(), hidden_layers.end());
  dims.push_back(num_actions);
  p.head = make_mlp(dims, Activation::kRelu, Activation::kIdentity, rng);
  return p;
}

void polyak_update(RecurrentPolicy& target, const RecurrentPolicy& online,
                   double omega) {
  if (!(omega >= 0.0 && omega <= 1.0))
    throw InvalidArgument("polyak_update: omega must lie in [0, 1]");
  auto t = parameters(target);
  auto o = parameters(const_cast<RecurrentPolicy&>(online));
  require_dims(t.size() == o.size(), "polyak_update parameter count");
  for (std::size_t k = 0; k < t.size(); ++k) {
    require_dims(t[k].values.size() == o[k].values.size(), "polyak_update " + t[k].name);
    for (std::size_t i = 0; i < t[k].values.size(); ++i)
      t[k].values[i] = omega * t[k].values[i] + (1.0 - omega) * o[k].values[i];
  }
}

std::vector<ParamView> parameters(GruCell& cell, const std::string& prefix) {
  std::vector<ParamView> out;
  auto add_gate = [&](GateParams& g, const std::string& name) {
    out.push_back({prefix + name + ".w_x", g.w_x.values()});
    out.push_back({prefix + name + ".w_h", g.w_h.values()});
    out.push_back({prefix + name + ".b", g.b});
  };
  add_gate(cell.update, "update");
  add_gate(cell.reset, "reset");
  add_gate(cell.candidate, "candidate");
  return out;
}

std::vector<ParamView> parameters(Mlp& mlp, const std::string& prefix) {
  std::vector<ParamView> out;
  for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
    const std::string base = prefix + "layer" + std::to_string(l);
    out.push_back({base + ".w", mlp.layers[l].w.values()});
    out.push_back({base + ".b", mlp.layers[l].b});
  }
  return out;
}

std::vector<ParamView> parameters(RecurrentPolicy& policy) {
  auto out = parameters(policy.gru, "gru.");
  auto head = parameters(policy.head, "head.");
  out.insert(out.end(), head.begin(), head.end());
  return out;
}

}  // namespace rnnprove::nn
