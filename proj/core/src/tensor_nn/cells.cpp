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

#include "rnnprove/tensor_nn/cells.hpp"

#include <cmath>
#include <string>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::nn {
namespace {

void validate_gate(const GateParams& g, std::size_t in, std::size_t hidden,
                   const char* name) {
  const std::string ctx = std::string("GRU ") + name + " gate";
  require_dims(g.w_x.rows() == hidden && g.w_x.cols() == in, ctx + " w_x");
  require_dims(g.w_h.rows() == hidden && g.w_h.cols() == hidden, ctx + " w_h");
  require_dims(g.b.size() == hidden, ctx + " bias");
}

// pre = W_x x + W_h h + b, summed in that order.
Vector gate_preactivation(const GateParams& g, std::span<const double> h,
                          std::span<const double> x) {
  Vector pre(g.b.size(), 0.0);
  matvec_accumulate(g.w_x, x, pre);
  matvec_accumulate(g.w_h, h, pre);
  for (std::size_t o = 0; o < pre.size(); ++o) pre[o] += g.b[o];
  return pre;
}

void gate_preactivation_batch(const GateParams& g, const Matrix& h,
                              const Matrix& x, Matrix& pre) {
  pre = Matrix(x.rows(), g.b.size());
  gemm_nt_accumulate(x, g.w_x, pre);
  gemm_nt_accumulate(h, g.w_h, pre);
  add_row_bias(pre, g.b);
}

void init_uniform(std::span<double> values, double bound, Rng& rng) {
  for (double& v : values) v = rng.uniform(-bound, bound);
}

GateParams make_gate(std::size_t in, std::size_t hidden, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in + hidden));
  GateParams g{Matrix(hidden, in), Matrix(hidden, hidden), Vector(hidden)};
  init_uniform(g.w_x.values(), bound, rng);
  init_uniform(g.w_h.values(), bound, rng);
  init_uniform(g.b, bound, rng);
  return g;
}

}  // namespace

void VanillaRnnCell::validate() const {
  const std::size_t hidden = w_h.rows();
  require_dims(w_h.cols() == hidden, "RNN w_h must be square");
  require_dims(w_x.rows() == hidden, "RNN w_x rows");
  require_dims(b_h.size() == hidden, "RNN bias");
}

Vector rnn_step(const VanillaRnnCell& cell, std::span<const double> h_prev,
                std::span<const double> x) {
  cell.validate();
  require_dims(x.size() == cell.input_dim(),
               "rnn_step input has " + std::to_string(x.size()) + " entries, cell expects " +
                   std::to_string(cell.input_dim()));
  require_dims(h_prev.size() == cell.hidden_dim(),
               "rnn_step h_prev has " + std::to_string(h_prev.size()) +
                   " entries, cell expects " + std::to_string(cell.hidden_dim()));
  Vector h(cell.hidden_dim(), 0.0);
  matvec_accumulate(cell.w_x, x, h);
  matvec_accumulate(cell.w_h, h_prev, h);
  for (std::size_t o = 0; o < h.size(); ++o) h[o] = activate(cell.activation, h[o] + cell.b_h[o]);
  return h;
}

void GruCell::validate() const {
  const std::size_t in = input_dim();
  const std::size_t hidden = hidden_dim();
  validate_gate(update, in, hidden, "update");
  validate_gate(reset, in, hidden, "reset");
  validate_gate(candidate, in, hidden, "candidate");
}

Vector gru_step(const GruCell& cell, std::span<const double> h_prev,
                std::span<const double> x) {
  require_dims(x.size() == cell.input_dim(),
               "gru_step input has " + std::to_string(x.size()) + " entries, cell expects " +
                   std::to_string(cell.input_dim()));
  require_dims(h_prev.size() == cell.hidden_dim(),
               "gru_step h_prev has " + std::to_string(h_prev.size()) +
                   " entries, cell expects " + std::to_string(cell.hidden_dim()));
  for (double v : h_prev)
    if (!(v >= -1.0 && v <= 1.0))
      throw InvalidArgument("gru_step: h_prev components must lie in [-1, 1]");

  const std::size_t n = cell.hidden_dim();
  Vector z = gate_preactivation(cell.update, h_prev, x);
  Vector r = gate_preactivation(cell.reset, h_prev, x);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = sigmoid(z[i]);
    r[i] = sigmoid(r[i]);
  }
  Vector rh(n);
  for (std::size_t i = 0; i < n; ++i) rh[i] = r[i] * h_prev[i];
  Vector c = gate_preactivation(cell.candidate, rh, x);
  Vector h(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::tanh(c[i]);
    h[i] = (1.0 - z[i]) * h_prev[i] + z[i] * c[i];
  }
  return h;
}

void gru_step_batch(const GruCell& cell, const Matrix& h, const Matrix& x,
                    Matrix& out, GruCache* cache) {
  require_dims(x.cols() == cell.input_dim() && h.cols() == cell.hidden_dim() &&
                   x.rows() == h.rows(),
               "gru_step_batch");
  const std::size_t n = cell.hidden_dim();
  const std::size_t rows = x.rows();
  GruCache local;
  GruCache& c = cache ? *cache : local;
  gate_preactivation_batch(cell.update, h, x, c.z);
  gate_preactivation_batch(cell.reset, h, x, c.r);
  activate_inplace(Activation::kSigmoid, c.z.values());
  activate_inplace(Activation::kSigmoid, c.r.values());
  c.rh = Matrix(rows, n);
  for (std::size_t k = 0; k < rows * n; ++k) c.rh.data()[k] = c.r.data()[k] * h.data()[k];
  gate_preactivation_batch(cell.candidate, c.rh, x, c.c);
  activate_inplace(Activation::kTanh, c.c.values());
  out = Matrix(rows, n);
  for (std::size_t k = 0; k < rows * n; ++k) {
    const double z = c.z.data()[k];
    out.data()[k] = (1.0 - z) * h.data()[k] + z * c.c.data()[k];
  }
}

GruCell make_gru(std::size_t input_dim, std::size_t hidden_dim, Rng& rng) {
  GruCell cell;
  cell.update = make_gate(input_dim, hidden_dim, rng);
  cell.reset = make_gate(input_dim, hidden_dim, rng);
  cell.candidate = make_gate(input_dim, hidden_dim, rng);
  return cell;
}

VanillaRnnCell make_scalar_rnn(double w_x, double w_h, double b,
                               Activation activation) {
  return VanillaRnnCell{Matrix(1, 1, w_x), Matrix(1, 1, w_h), Vector{b}, activation};
}

}  // namespace rnnprove::nn
