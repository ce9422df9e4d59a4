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
#include <span>
#include <vector>

#include "rnnprove/common/rng.hpp"
#include "rnnprove/tensor_nn/activation.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"

namespace rnnprove::nn {

struct DenseLayer {
  Matrix w;  // out x in
  Vector b;
  Activation activation = Activation::kIdentity;
};

struct Mlp {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  void validate() const;

  Vector forward(std::span<const double> x) const;
  // Row-wise forward of a batch. `skip_final_activation` returns the last
  // layer's pre-activation (e.g. a logit instead of a probability).
  void forward_batch(const Matrix& x, Matrix& out,
                     bool skip_final_activation = false) const;
};

// dims = {in, hidden..., out}; hidden layers use `hidden`, the last uses
// `output`.
Mlp make_mlp(std::span<const std::size_t> dims, Activation hidden,
             Activation output, Rng& rng);

}  // namespace rnnprove::nn
