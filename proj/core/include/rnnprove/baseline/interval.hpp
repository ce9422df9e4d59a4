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
#include <variant>
#include <vector>

#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/tensor_nn/activation.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"

namespace rnnprove::baseline {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
};

// Axis-aligned box [lower, upper].
struct IntervalVector {
  nn::Vector lower;
  nn::Vector upper;

  IntervalVector() = default;
  IntervalVector(nn::Vector lo, nn::Vector hi);
  static IntervalVector point(std::span<const double> v);
  static IntervalVector uniform(std::size_t n, double lo, double hi);

  std::size_t size() const { return lower.size(); }
  Interval at(std::size_t i) const { return {lower[i], upper[i]}; }
  bool contains(std::span<const double> v) const;
  bool contains(const IntervalVector& inner) const;
  bool is_point() const;
  // Throws InvalidArgument when lengths differ or lower > upper somewhere.
  void validate() const;
};

// Bounds are evaluated with the same summation order as the concrete
// forward pass, so point boxes reproduce it bitwise and rounding is
// monotone in each argument.
IntervalVector interval_matvec_accumulate(const nn::Matrix& w, const IntervalVector& x,
                                          const IntervalVector& acc);
IntervalVector interval_add_bias(const IntervalVector& x, std::span<const double> b);
IntervalVector interval_activate(nn::Activation a, const IntervalVector& x);
Interval interval_mul(Interval a, Interval b);

IntervalVector interval_rnn_step(const nn::VanillaRnnCell& cell, const IntervalVector& h,
                                 const IntervalVector& x);
// Enclosure of gru_step over the box; the result is clipped to [-1, 1]^n.
IntervalVector interval_gru_step(const nn::GruCell& cell, const IntervalVector& h,
                                 const IntervalVector& x);
IntervalVector interval_mlp(const nn::Mlp& mlp, const IntervalVector& x);
// Enclosure of encode_margin over the box of Q-values.
Interval interval_margin(const IntervalVector& q, const env::BehaviorSpec& behavior);

// Robustness query: unroll `cell` from the point h0 over the input boxes
// and read y_T = c^T h_T + b_y.
struct RobustnessTask {
  std::variant<nn::VanillaRnnCell, nn::GruCell> cell;
  nn::Vector h0;
  std::vector<IntervalVector> inputs;
  nn::Vector c;
  double b_y = 0.0;
  void validate() const;
};

struct UnrollResult {
  Interval output;
  std::vector<IntervalVector> hidden;  // H_1 .. H_T
  bool robust = false;                 // lower(Y_T) > 0
};

UnrollResult interval_rnn_unroll(const RobustnessTask& task);
// Concrete forward pass of the same task for one input sequence.
double concrete_unroll(const RobustnessTask& task, std::span<const nn::Vector> inputs);

}  // namespace rnnprove::baseline
