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

#include "rnnprove/baseline/interval.hpp"
#include "rnnprove/verifier/certificate.hpp"
#include "rnnprove/verifier/oracle.hpp"
#include "rnnprove/verifier/tasks.hpp"

namespace rnnprove::baseline {

struct VolumeConfig {
  std::size_t resolution = 0;  // 0 selects default_resolution(n)
  double cell_cap = 1e8;       // largest admissible r^n
  std::size_t workers = 1;
};

// 16 per axis up to n = 4, 6 beyond.
std::size_t default_resolution(std::size_t hidden_dim);

// Status of the margin over a hidden box at a fixed observation.
enum class BoxStatus { kSafe, kViolating, kIndeterminate };
BoxStatus classify_box(const nn::RecurrentPolicy& policy, const IntervalVector& observation,
                       const env::BehaviorSpec& behavior, const IntervalVector& hidden);

struct VolumeResult {
  std::size_t resolution = 0;
  std::size_t cells = 0;           // r^n
  std::size_t feasible_cells = 0;  // centers accepted by the oracle
  std::size_t violating_cells = 0; // feasible cells with any violating part
  std::size_t indeterminate_cells = 0;
  std::size_t center_resolved = 0; // sub-cells decided by their center
  double fraction = 0.0;           // violating share of the feasible volume
  bool approximate() const { return center_resolved > 0; }
};

// Partitions H = [-1, 1]^n into r^n cells. A cell is feasible when its
// center passes the oracle; a feasible cell is decided by interval
// propagation, and an undecided one is split once along every axis with
// any still-undecided sub-cell resolved by its center margin. Throws
// CapExceeded when r^n exceeds the cell cap.
VolumeResult baseline_volume_raw(const verify::VerificationTask& task,
                                 const verify::FeasibilityOracle& oracle,
                                 const VolumeConfig& config);

verify::Certificate baseline_volume(const verify::VerificationTask& task,
                                    const verify::FeasibilityOracle& oracle,
                                    const VolumeConfig& config);

}  // namespace rnnprove::baseline
