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

#include "rnnprove/verifier/marl.hpp"

#include <algorithm>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::verify {

Certificate aggregate_max(std::vector<Certificate> agents) {
  if (agents.empty()) throw InvalidArgument("aggregate_max: no agent certificates");
  Certificate top;
  top.method = kMethodMarl;
  top.oracle = agents.front().oracle;
  top.hidden_dim = agents.front().hidden_dim;
  top.volume_h = agents.front().volume_h;
  top.seed = agents.front().seed;
  top.workers = agents.front().workers;
  top.guarantee = true;
  std::size_t worst = 0;
  std::size_t loosest = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Certificate& a = agents[i];
    if (a.v_tilde > agents[worst].v_tilde) worst = i;
    if (a.budget.epsilon > agents[loosest].budget.epsilon) loosest = i;
    top.guarantee = top.guarantee && a.guarantee;
    top.drawn += a.drawn;
    top.seconds += a.seconds;
    top.task += (i ? " | " : "") + a.task;
  }
  top.v_tilde = agents[worst].v_tilde;
  top.p_hat = agents[worst].p_hat;
  top.h_normalized = agents[worst].h_normalized;
  top.accepted = agents[worst].accepted;
  top.violations = agents[worst].violations;
  top.witness = agents[worst].witness;
  // Epsilon parts from the loosest agent; confidence is the union bound.
  top.budget = agents[loosest].budget;
  top.budget.delta_clf = 0.0;
  top.budget.delta_ver = 0.0;
  for (const auto& a : agents) {
    top.budget.delta_clf += a.budget.delta_clf;
    top.budget.delta_ver += a.budget.delta_ver;
  }
  top.budget.delta = top.budget.delta_clf + top.budget.delta_ver;
  top.supported_eps_ver = agents[loosest].supported_eps_ver;
  if (!top.guarantee) top.note = "NO-GUARANTEE: at least one agent lacks a guarantee";
  top.agents = std::move(agents);
  return top;
}

Certificate verify_marl(std::span<const AgentQuery> agents, std::size_t draws, double delta,
                        const EstimatorConfig& config) {
  if (agents.empty()) throw InvalidArgument("verify_marl: no agents");
  const double per_agent = delta / static_cast<double>(agents.size());
  std::vector<Certificate> subs;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentQuery& q = agents[i];
    if (!q.model || !q.oracle)
      throw InvalidArgument("verify_marl: agent " + std::to_string(i) + " is incomplete");
    try {
      subs.push_back(estimate_fixed_draws(*q.model, *q.oracle, draws, per_agent, q.report, config,
                                          q.task));
    } catch (const std::exception& e) {
      throw InvalidArgument("verify_marl: agent " + std::to_string(i) + ": " + e.what());
    }
  }
  return aggregate_max(std::move(subs));
}

}  // namespace rnnprove::verify
