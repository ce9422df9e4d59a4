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

#include "rnnprove/baseline/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::baseline {
namespace {

struct Key {
  std::size_t cell = 0;
  std::vector<std::int64_t> q;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ull ^ k.cell;
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Frame {
  env::NavState state;
  nn::Vector h_next;  // recurrent state after this decision
  std::size_t next_action = 0;
};

}  // namespace

std::size_t ExactHistorySet::size() const {
  std::size_t n = 0;
  for (const auto& [cell, hs] : hidden) n += hs.size();
  return n;
}

const std::vector<nn::Vector>& ExactHistorySet::at(env::Cell c) const {
  static const std::vector<nn::Vector> kEmpty;
  auto it = hidden.find(c);
  return it == hidden.end() ? kEmpty : it->second;
}

feas::FeasibilityDataset ExactHistorySet::to_dataset(const env::NavEnv& env) const {
  feas::FeasibilityDataset d;
  d.state_dim = env::NavEnv::kStateDim;
  d.hidden_dim = hidden_dim;
  for (const auto& [cell, hs] : hidden) {
    const nn::Vector code = env.encode_cell(cell);
    for (const auto& h : hs) d.rows.push_back({code, h, 1, feas::PairSource::kExact});
  }
  return d;
}

ExactHistorySet exact_history_enumeration(const env::NavEnv& env,
                                          const nn::RecurrentPolicy& policy, int horizon,
                                          const EnumerationConfig& config) {
  if (horizon < 0) throw InvalidArgument("enumeration horizon must be non-negative");
  if (!(config.merge_quantum > 0.0)) throw InvalidArgument("merge quantum must be positive");
  policy.validate();
  if (policy.obs_dim() != env::NavEnv::kObsDim)
    throw DimensionError("policy observation width does not match the environment");

  const std::size_t n = policy.hidden_dim();
  ExactHistorySet out;
  out.hidden_dim = n;
  out.horizon = horizon;
  out.per_depth.assign(static_cast<std::size_t>(horizon) + 1, 0);
  std::vector<std::size_t> expansions(static_cast<std::size_t>(horizon) + 1, 0);
  std::unordered_map<Key, int, KeyHash> best_depth;

  auto key_of = [&](env::Cell c, const nn::Vector& h) {
    Key k;
    k.cell = env.grid().index(c);
    k.q.reserve(n);
    for (double v : h) k.q.push_back(std::llround(v / config.merge_quantum));
    return k;
  };

  // Records the pair and pushes a frame when it needs (re-)expansion.
  std::vector<Frame> stack;
  auto visit = [&](const env::NavState& s, nn::Vector h) {
    const int depth = s.step;
    Key key = key_of(s.agent, h);
    auto [it, fresh] = best_depth.try_emplace(std::move(key), depth);
    if (!fresh) {
      if (it->second <= depth) return;
      it->second = depth;
    } else {
      out.hidden[s.agent].push_back(h);
    }
    if (++out.expanded > config.cap) {
      const auto worst = std::max_element(expansions.begin(), expansions.end());
      const auto d = static_cast<std::size_t>(worst - expansions.begin());
      throw CapExceeded("exact enumeration exceeded " + std::to_string(config.cap) +
                            " decision points; blow-up at depth " + std::to_string(d) + " (" +
                            std::to_string(*worst) + " expansions)",
                        d);
    }
    ++expansions[static_cast<std::size_t>(depth)];
    if (depth >= horizon) return;
    Frame f;
    f.state = s;
    f.h_next = nn::gru_step(policy.gru, h, env.observe(s.agent));
    stack.push_back(std::move(f));
  };

  visit(env.reset(), nn::Vector(n, 0.0));
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_action == env::kNavActions) {
      stack.pop_back();
      continue;
    }
    const std::size_t a = top.next_action++;
    const env::NavStep step = env.step(top.state, a);
    if (step.state.cause != env::TerminalCause::kNone) continue;
    nn::Vector h = top.h_next;  // copy: visit may reallocate the stack
    visit(step.state, std::move(h));
  }
  for (const auto& [key, depth] : best_depth) ++out.per_depth[static_cast<std::size_t>(depth)];
  return out;
}

}  // namespace rnnprove::baseline
