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

#include "rnnprove/envs/behavior.hpp"

namespace rnnprove::verify {

// Scalar whose sign decides the behavior: > 0 iff the greedy action (ties
// to the lowest index) satisfies `behavior`.
//   avoid form:   max_{a not in U} q[a] - max_{a in U} q[a]
//   require form: q[r] - max_{a != r} q[a]
// An exact tie between the two maxima yields the smallest positive double
// when the lowest-index rule picks the allowed side, and 0 otherwise.
// Throws InvalidArgument for vacuous descriptors (U empty or U = all).
double encode_margin(std::span<const double> q_values, const env::BehaviorSpec& behavior);

}  // namespace rnnprove::verify
