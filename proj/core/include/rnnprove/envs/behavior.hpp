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

namespace rnnprove::env {

// Desired behavior at a verification state, in one of two forms:
//  - kAvoidActions: the greedy action must not be in `unsafe`;
//  - kRequireAction: the greedy action must equal `required`.
struct BehaviorSpec {
  enum class Kind { kAvoidActions, kRequireAction };
  Kind kind = Kind::kAvoidActions;
  std::vector<std::size_t> unsafe;
  std::size_t required = 0;
  std::size_t num_actions = 0;

  static BehaviorSpec avoid(std::vector<std::size_t> unsafe, std::size_t num_actions);
  static BehaviorSpec require(std::size_t action, std::size_t num_actions);
  // True when the form admits no violation (empty unsafe set).
  bool vacuous() const { return kind == Kind::kAvoidActions && unsafe.empty(); }
  std::string describe() const;
};

}  // namespace rnnprove::env
