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

#include <memory>
#include <string>

#include "rnnprove/baseline/enumeration.hpp"
#include "rnnprove/feasibility/negatives.hpp"
#include "rnnprove/verifier/oracle.hpp"

namespace rnnprove::baseline {

// Point oracle over an enumerated set: accepts hidden states within
// L-infinity distance tau of an exactly reachable hidden state of the
// queried state. The enumerated points themselves have measure zero, so
// tau turns them into a set a sampler can hit.
class ExactSetOracle final : public verify::FeasibilityOracle {
 public:
  ExactSetOracle(std::shared_ptr<const feas::ProximityIndex> index, nn::Vector state_code,
                 double tau);
  void accept_batch(const nn::Matrix& hidden, std::vector<std::uint8_t>& out) const override;
  std::string name() const override { return "exact-set"; }
  double tau() const { return tau_; }

 private:
  std::shared_ptr<const feas::ProximityIndex> index_;
  nn::Vector state_;
  double tau_;
};

std::shared_ptr<const feas::ProximityIndex> make_exact_index(const ExactHistorySet& set,
                                                             const env::NavEnv& env);

// Fraction of the enumerated hidden states at `cell` whose margin is <= 0:
// the ground-truth violation rate over the exact feasible set.
struct ExactViolation {
  std::size_t states = 0;
  std::size_t violating = 0;
  double fraction() const { return states ? double(violating) / double(states) : 0.0; }
};
ExactViolation exact_violation(const ExactHistorySet& set, env::Cell cell,
                               const verify::MarginModel& model);

}  // namespace rnnprove::baseline
