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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"
#include "rnnprove/tensor_nn/policy.hpp"

namespace rnnprove::verify {

// Point membership test for the feasible set H* at a fixed state.
class FeasibilityOracle {
 public:
  virtual ~FeasibilityOracle() = default;
  // Rows of `hidden` are candidate hidden states; writes 1 for accepted.
  virtual void accept_batch(const nn::Matrix& hidden, std::vector<std::uint8_t>& out) const = 0;
  virtual std::string name() const = 0;
};

class PassAllOracle final : public FeasibilityOracle {
 public:
  void accept_batch(const nn::Matrix& hidden, std::vector<std::uint8_t>& out) const override;
  std::string name() const override { return "pass-all"; }
};

class ClassifierOracle final : public FeasibilityOracle {
 public:
  ClassifierOracle(const feas::FeasibilityClassifier& classifier, nn::Vector state_code);
  void accept_batch(const nn::Matrix& hidden, std::vector<std::uint8_t>& out) const override;
  std::string name() const override { return "classifier"; }

 private:
  const feas::FeasibilityClassifier* classifier_;
  nn::Vector state_;
};

// Margin function over hidden states at a fixed observation.
class MarginModel {
 public:
  virtual ~MarginModel() = default;
  virtual std::size_t hidden_dim() const = 0;
  virtual void margins(const nn::Matrix& hidden, std::vector<double>& out) const = 0;
};

// f(h, o) = margin(head(gru(h, o))).
class PolicyMargin final : public MarginModel {
 public:
  PolicyMargin(const nn::RecurrentPolicy& policy, nn::Vector observation,
               env::BehaviorSpec behavior);
  std::size_t hidden_dim() const override { return policy_->hidden_dim(); }
  void margins(const nn::Matrix& hidden, std::vector<double>& out) const override;
  double margin(std::span<const double> hidden) const;

 private:
  const nn::RecurrentPolicy* policy_;
  nn::Vector observation_;
  env::BehaviorSpec behavior_;
};

// Arbitrary per-point margin, used for synthetic tasks.
class FunctionMargin final : public MarginModel {
 public:
  FunctionMargin(std::size_t dim, std::function<double(std::span<const double>)> fn)
      : dim_(dim), fn_(std::move(fn)) {}
  std::size_t hidden_dim() const override { return dim_; }
  void margins(const nn::Matrix& hidden, std::vector<double>& out) const override;

 private:
  std::size_t dim_;
  std::function<double(std::span<const double>)> fn_;
};

}  // namespace rnnprove::verify
