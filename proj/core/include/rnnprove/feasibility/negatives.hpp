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
#include <span>
#include <vector>

#include "rnnprove/feasibility/dataset.hpp"

namespace rnnprove::feas {

// L-infinity proximity queries against the feasible hidden states of each
// state. Points are kept sorted by their first coordinate so a query only
// scans the slab |h_0 - q_0| <= tau.
class ProximityIndex {
 public:
  explicit ProximityIndex(const FeasibilityDataset& dataset);
  // Some stored feasible hidden state of `state` lies within L-inf `tau`.
  bool near(std::span<const double> state, std::span<const double> hidden, double tau) const;
  std::size_t state_count() const { return points_.size(); }

 private:
  std::map<nn::Vector, std::vector<nn::Vector>> points_;
};

struct NegativeConfig {
  double ratio = 1.0;
  double tau = 0.05;
  std::uint64_t seed = 11;
};

// Adds ratio * positives label-0 rows, half uniform over [-1, 1]^n and half
// mismatched (a feasible hidden state of another state), rejecting
// candidates within tau of a feasible hidden state of the target state.
// Throws ConstructionFailure when more than 99% of candidates are rejected.
FeasibilityDataset make_negatives(const FeasibilityDataset& recorded, const NegativeConfig& config);

}  // namespace rnnprove::feas
