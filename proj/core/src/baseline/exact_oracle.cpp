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

#include "rnnprove/baseline/exact_oracle.hpp"

#include "rnnprove/common/errors.hpp"

namespace rnnprove::baseline {

ExactSetOracle::ExactSetOracle(std::shared_ptr<const feas::ProximityIndex> index,
                               nn::Vector state_code, double tau)
    : index_(std::move(index)), state_(std::move(state_code)), tau_(tau) {
  if (!index_) throw InvalidArgument("ExactSetOracle needs an index");
  if (!(tau >= 0.0)) throw InvalidArgument("ExactSetOracle tau must be non-negative");
}

void ExactSetOracle::accept_batch(const nn::Matrix& hidden,
                                  std::vector<std::uint8_t>& out) const {
  out.resize(hidden.rows());
  for (std::size_t r = 0; r < hidden.rows(); ++r)
    out[r] = index_->near(state_, hidden.row(r), tau_) ? 1 : 0;
}

std::shared_ptr<const feas::ProximityIndex> make_exact_index(const ExactHistorySet& set,
                                                             const env::NavEnv& env) {
  return std::make_shared<const feas::ProximityIndex>(set.to_dataset(env));
}

ExactViolation exact_violation(const ExactHistorySet& set, env::Cell cell,
                               const verify::MarginModel& model) {
  const auto& hs = set.at(cell);
  ExactViolation v;
  v.states = hs.size();
  if (hs.empty()) return v;
  nn::Matrix h(hs.size(), set.hidden_dim);
  for (std::size_t i = 0; i < hs.size(); ++i) std::copy(hs[i].begin(), hs[i].end(), h.row(i).begin());
  std::vector<double> m;
  model.margins(h, m);
  for (double x : m) v.violating += x <= 0.0;
  return v;
}

}  // namespace rnnprove::baseline
