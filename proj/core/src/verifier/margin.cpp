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

#include "rnnprove/verifier/margin.hpp"

#include <limits>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::verify {
namespace {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
  void offer(double v, std::size_t i) {
    if (index == std::numeric_limits<std::size_t>::max() || v > value) {
      value = v;
      index = i;
    }
  }
};

double resolve(const Best& allowed, const Best& forbidden) {
  const double m = allowed.value - forbidden.value;
  if (m != 0.0) return m;
  return allowed.index < forbidden.index ? std::numeric_limits<double>::denorm_min() : 0.0;
}

}  // namespace

double encode_margin(std::span<const double> q, const env::BehaviorSpec& behavior) {
  if (q.size() != behavior.num_actions)
    throw DimensionError("encode_margin: " + std::to_string(q.size()) + " q-values for " +
                         std::to_string(behavior.num_actions) + " actions");
  Best allowed;
  Best forbidden;
  if (behavior.kind == env::BehaviorSpec::Kind::kRequireAction) {
    if (q.size() < 2) throw InvalidArgument("encode_margin: required action is the only action");
    for (std::size_t a = 0; a < q.size(); ++a)
      (a == behavior.required ? allowed : forbidden).offer(q[a], a);
  } else {
    if (behavior.unsafe.empty())
      throw InvalidArgument("encode_margin: empty unsafe set; the task is vacuous");
    if (behavior.unsafe.size() >= q.size())
      throw InvalidArgument("encode_margin: every action is unsafe; the task is vacuous");
    std::size_t next = 0;  // unsafe is sorted
    for (std::size_t a = 0; a < q.size(); ++a) {
      const bool is_unsafe = next < behavior.unsafe.size() && behavior.unsafe[next] == a;
      if (is_unsafe) ++next;
      (is_unsafe ? forbidden : allowed).offer(q[a], a);
    }
  }
  return resolve(allowed, forbidden);
}

}  // namespace rnnprove::verify
