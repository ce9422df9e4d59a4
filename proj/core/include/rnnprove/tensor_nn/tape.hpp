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
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "rnnprove/tensor_nn/activation.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"

namespace rnnprove::nn {

// Gradients keyed by the storage of the parameter they belong to.
// Parameters that the tape never touched read back as exact zeros.
class Gradients {
 public:
  std::vector<double> of(const Matrix& param) const;
  std::vector<double> of(const Vector& param) const;
  std::vector<double> of(std::span<const double> param) const;
  bool touched(const double* storage) const { return grads_.count(storage) > 0; }

  // Accumulation buffer for `param`, created zeroed on first use.
  std::span<double> accumulator(std::span<const double> param);

 private:
  std::map<const double*, std::vector<double>> grads_;
};

// Records one batched forward computation so that it can be differentiated
// in reverse. Values are matrices whose rows are independent samples.
// Referenced parameters must outlive the tape and stay unchanged until
// backward() has run. A tape can be differentiated once.
class Tape {
 public:
  struct Var {
    std::size_t id;
  };

  Tape();
  ~Tape();
  Tape(Tape&&) noexcept;
  Tape& operator=(Tape&&) noexcept;

  Var constant(Matrix value);
  // x * w^T + b
  Var affine(Var x, const Matrix& w, const Vector& b);
  Var activation(Var x, Activation a);
  Var gru(Var h, Var x, const GruCell& cell);
  // Full MLP forward; the final activation is skipped when requested.
  Var mlp(Var x, const Mlp& mlp, bool skip_final_activation = false);
  // out[b] = q[b][columns[b]]  (B x 1)
  Var gather(Var q, std::vector<std::size_t> columns);
  // 1x1: sum_b mask[b] * (pred[b] - target[b])^2 / normalizer
  Var masked_mse(Var pred, std::vector<double> target, std::vector<double> mask,
                 double normalizer);
  // 1x1: sum_b bce(sigmoid(logit[b]), label[b]) / normalizer
  Var bce_with_logits(Var logit, std::vector<double> labels, double normalizer);
  // Sum of 1x1 values.
  Var sum(std::span<const Var> scalars);

  const Matrix& value(Var v) const;
  bool consumed() const { return consumed_; }

  // Reverse pass from a 1x1 loss seeded with d(loss) = seed.
  Gradients backward(Var loss, double seed = 1.0);

 private:
  struct Node;
  Var push(std::unique_ptr<Node> node);
  std::vector<std::unique_ptr<Node>> nodes_;
  bool consumed_ = false;
};

}  // namespace rnnprove::nn
