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

#include "rnnprove/envs/behavior.hpp"

#include <algorithm>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::env {

BehaviorSpec BehaviorSpec::avoid(std::vector<std::size_t> unsafe, std::size_t num_actions) {
  std::sort(unsafe.begin(), unsafe.end());
  unsafe.erase(std::unique(unsafe.begin(), unsafe.end()), unsafe.end());
  for (std::size_t a : unsafe)
    if (a >= num_actions) throw InvalidArgument("unsafe action index out of range");
  BehaviorSpec b;
  b.kind = Kind::kAvoidActions;
  b.unsafe = std::move(unsafe);
  b.num_actions = num_actions;
  return b;
}

BehaviorSpec BehaviorSpec::require(std::size_t action, std::size_t num_actions) {
  if (action >= num_actions) throw InvalidArgument("required action index out of range");
  BehaviorSpec b;
  b.kind = Kind::kRequireAction;
  b.required = action;
  b.num_actions = num_actions;
  return b;
}

std::string BehaviorSpec::describe() const {
  if (kind == Kind::kRequireAction) return "require:" + std::to_string(required);
  std::string s = "avoid:{";
  for (std::size_t i = 0; i < unsafe.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(unsafe[i]);
  }
  return s + "}";
}

}  // namespace rnnprove::env
