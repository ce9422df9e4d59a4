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
#include <optional>
#include <string>

#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/verifier/budget.hpp"
#include "rnnprove/verifier/certificate.hpp"
#include "rnnprove/verifier/oracle.hpp"

namespace rnnprove::verify {

struct EstimatorConfig {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t chunk = 8192;
  // Draw cap as a multiple of the target accepted count; 1 / acceptance_floor
  // lets every query whose acceptance rate clears the floor finish.
  double draw_cap_factor = 10000.0;
  // Abort with NO-GUARANTEE once at least min_draws_for_floor draws have
  // been made and the acceptance rate is below this floor.
  double acceptance_floor = 1e-4;
  std::size_t min_draws_for_floor = 100000;
};

// Draw uniform hidden states from [-1, 1]^n until `budget` requires no
// more accepted samples: N = required_samples(eps_ver, delta_ver).
Certificate estimate_violation(const MarginModel& model, const FeasibilityOracle& oracle,
                               const ErrorBudget& budget, const EstimatorConfig& config,
                               const std::string& task = {},
                               const std::optional<feas::ClassifierReport>& report = {});

// Draw exactly `draws` samples; the guarantee is whatever the accepted
// count supports at total confidence delta, given the classifier's e_hat
// and validation size.
Certificate estimate_fixed_draws(const MarginModel& model, const FeasibilityOracle& oracle,
                                 std::size_t draws, double delta,
                                 const feas::ClassifierReport& report,
                                 const EstimatorConfig& config, const std::string& task = {});

// Unfiltered estimator: every draw counts; no feasibility semantics.
Certificate naive_monte_carlo(const MarginModel& model, std::size_t samples, double delta,
                              const EstimatorConfig& config, const std::string& task = {});

// Counts from a sampling pass, exposed for tests of the prefix property.
struct SampleOutcome {
  bool accepted = false;
  bool violating = false;
};
std::vector<SampleOutcome> sample_outcomes(const MarginModel& model,
                                           const FeasibilityOracle& oracle, std::uint64_t seed,
                                           std::uint64_t first, std::size_t count,
                                           std::size_t workers = 1);

}  // namespace rnnprove::verify
