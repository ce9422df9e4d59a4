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
#include <string>
#include <vector>

#include "rnnprove/tensor_nn/matrix.hpp"

namespace rnnprove::feas {

enum class PairSource { kRecorded, kMismatched, kUniformNegative, kExact };
const char* source_name(PairSource source);
PairSource parse_source(const std::string& name);

struct FeasiblePair {
  nn::Vector state;
  nn::Vector hidden;
  int label = 1;  // 1 feasible, 0 infeasible
  PairSource source = PairSource::kRecorded;
};

struct FeasibilityDataset {
  std::size_t state_dim = 0;
  std::size_t hidden_dim = 0;
  std::vector<FeasiblePair> rows;

  std::size_t count(int label) const;
  // Throws DimensionError if any row disagrees with the declared widths.
  void validate() const;
};

// CSV with header s0..,h0..,label,source; reals in round-trip form.
// Leading lines starting with '#' are skipped by the parser.
std::string dataset_csv(const FeasibilityDataset& dataset);
FeasibilityDataset parse_dataset_csv(const std::string& text);

// Stable 64-bit hash of a row's numeric content and label.
std::uint64_t row_hash(const FeasiblePair& row);

}  // namespace rnnprove::feas
