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

#include <span>
#include <vector>

#include "rnnprove/verifier/estimator.hpp"

namespace rnnprove::verify {

struct AgentQuery {
  const MarginModel* model = nullptr;
  const FeasibilityOracle* oracle = nullptr;
  feas::ClassifierReport report;
  std::string task;
};

// Max-aggregation over agents. Each agent is verified independently with
// the same sampler seed at confidence delta / agents, so all per-agent
// bounds hold jointly with probability >= 1 - delta. The top-level
// estimate and epsilon are the maxima over agents.
Certificate verify_marl(std::span<const AgentQuery> agents, std::size_t draws, double delta,
                        const EstimatorConfig& config);

// Aggregates existing sub-certificates.
Certificate aggregate_max(std::vector<Certificate> agents);

}  // namespace rnnprove::verify
