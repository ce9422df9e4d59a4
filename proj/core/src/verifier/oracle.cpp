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

#include "rnnprove/verifier/oracle.hpp"

#include <algorithm>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/verifier/margin.hpp"

namespace rnnprove::verify {

void PassAllOracle::accept_batch(const nn::Matrix& hidden, std::vector<std::uint8_t>& out) const {
  out.assign(hidden.rows(), 1);
}

ClassifierOracle::ClassifierOracle(const feas::FeasibilityClassifier& classifier,
                                   nn::Vector state_code)
    : classifier_(&classifier), state_(std::move(state_code)) {
  nn::require_dims(state_.size() == classifier.state_dim, "classifier oracle state");
}

void ClassifierOracle::accept_batch(const nn::Matrix& hidden,
                                    std::vector<std::uint8_t>& out) const {
  nn::require_dims(hidden.cols() == classifier_->hidden_dim, "classifier oracle hidden");
  nn::Matrix x(hidden.rows(), state_.size() + hidden.cols());
  for (std::size_t b = 0; b < hidden.rows(); ++b) {
    auto row = x.row(b);
    std::copy(state_.begin(), state_.end(), row.begin());
    const auto h = hidden.row(b);
    std::copy(h.begin(), h.end(), row.begin() + state_.size());
  }
  classifier_->accept_batch(x, out);
}

PolicyMargin::PolicyMargin(const nn::RecurrentPolicy& policy, nn::Vector observation,
                           env::BehaviorSpec behavior)
    : policy_(&policy), observation_(std::move(observation)), behavior_(std::move(behavior)) {
  nn::require_dims(observation_.size() == policy.obs_dim(), "policy margin observation");
  nn::require_dims(behavior_.num_actions == policy.num_actions(), "policy margin actions");
}

void PolicyMargin::margins(const nn::Matrix& hidden, std::vector<double>& out) const {
  out.resize(hidden.rows());
  if (hidden.rows() == 0) return;
  nn::Matrix x(hidden.rows(), observation_.size());
  for (std::size_t b = 0; b < hidden.rows(); ++b)
    std::copy(observation_.begin(), observation_.end(), x.row(b).begin());
  nn::Matrix h_next;
  nn::gru_step_batch(policy_->gru, hidden, x, h_next);
  nn::Matrix q;
  policy_->head.forward_batch(h_next, q);
  for (std::size_t b = 0; b < hidden.rows(); ++b) out[b] = encode_margin(q.row(b), behavior_);
}

double PolicyMargin::margin(std::span<const double> hidden) const {
  const nn::PolicyStep s = nn::forward_policy(*policy_, hidden, observation_);
  return encode_margin(s.q_values, behavior_);
}

void FunctionMargin::margins(const nn::Matrix& hidden, std::vector<double>& out) const {
  nn::require_dims(hidden.cols() == dim_, "function margin input");
  out.resize(hidden.rows());
  for (std::size_t b = 0; b < hidden.rows(); ++b) out[b] = fn_(hidden.row(b));
}

}  // namespace rnnprove::verify
