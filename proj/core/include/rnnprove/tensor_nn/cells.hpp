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

#include "rnnprove/common/rng.hpp"
#include "rnnprove/tensor_nn/activation.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"

namespace rnnprove::nn {

// h_t = act(W_x x_t + W_h h_{t-1} + b_h)
struct VanillaRnnCell {
  Matrix w_x;
  Matrix w_h;
  Vector b_h;
  Activation activation = Activation::kRelu;

  std::size_t input_dim() const { return w_x.cols(); }
  std::size_t hidden_dim() const { return w_h.rows(); }
  void validate() const;
};

Vector rnn_step(const VanillaRnnCell& cell, std::span<const double> h_prev,
                std::span<const double> x);

// One gate of a GRU: pre-activation W_x x + W_h h + b.
struct GateParams {
  Matrix w_x;
  Matrix w_h;
  Vector b;
};

// Cho et al. GRU with the reset gate applied to the recurrent term inside
// the candidate:
//   z = sigmoid(Wz_x x + Wz_h h + bz)
//   r = sigmoid(Wr_x x + Wr_h h + br)
//   c = tanh(Wc_x x + Wc_h (r . h) + bc)
//   h' = (1 - z) . h + z . c
struct GruCell {
  GateParams update;
  GateParams reset;
  GateParams candidate;

  std::size_t input_dim() const { return update.w_x.cols(); }
  std::size_t hidden_dim() const { return update.w_h.rows(); }
  void validate() const;
};

// Intermediates of a batched GRU step, kept for backpropagation.
struct GruCache {
  Matrix z;
  Matrix r;
  Matrix c;
  Matrix rh;
};

Vector gru_step(const GruCell& cell, std::span<const double> h_prev,
                std::span<const double> x);
// Rows of `h` and `x` are independent samples. Writes the next hidden state
// for each row into `out`; fills `cache` when non-null.
void gru_step_batch(const GruCell& cell, const Matrix& h, const Matrix& x,
                    Matrix& out, GruCache* cache = nullptr);

// Uniform initialization in [-1/sqrt(fan_in), 1/sqrt(fan_in)], with the
// gate fan-in taken as input_dim + hidden_dim.
GruCell make_gru(std::size_t input_dim, std::size_t hidden_dim, Rng& rng);
VanillaRnnCell make_scalar_rnn(double w_x, double w_h, double b,
                               Activation activation);

}  // namespace rnnprove::nn
