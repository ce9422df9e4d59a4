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

#include "rnnprove/tensor_nn/mlp.hpp"

#include <cmath>
#include <string>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::nn {

std::size_t Mlp::input_dim() const { return layers.empty() ? 0 : layers.front().w.cols(); }
std::size_t Mlp::output_dim() const { return layers.empty() ? 0 : layers.back().w.rows(); }

void Mlp::validate() const {
  if (layers.empty()) throw DimensionError("Mlp has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    require_dims(layer.b.size() == layer.w.rows(), "Mlp layer " + std::to_string(l) + " bias");
    if (l > 0)
      require_dims(layer.w.cols() == layers[l - 1].w.rows(),
                   "Mlp layer " + std::to_string(l) + " input");
  }
}

Vector Mlp::forward(std::span<const double> x) const {
  require_dims(x.size() == input_dim(), "Mlp input has " + std::to_string(x.size()) +
                                            " entries, expected " +
                                            std::to_string(input_dim()));
  Vector cur(x.begin(), x.end());
  for (const auto& layer : layers) {
    Vector next(layer.w.rows(), 0.0);
    matvec_accumulate(layer.w, cur, next);
    for (std::size_t o = 0; o < next.size(); ++o)
      next[o] = activate(layer.activation, next[o] + layer.b[o]);
    cur = std::move(next);
  }
  return cur;
}

void Mlp::forward_batch(const Matrix& x, Matrix& out, bool skip_final_activation) const {
  require_dims(x.cols() == input_dim(), "Mlp batch input");
  Matrix cur = x;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    Matrix next(cur.rows(), layer.w.rows());
    gemm_nt_accumulate(cur, layer.w, next);
    add_row_bias(next, layer.b);
    const bool last = l + 1 == layers.size();
    if (!(last && skip_final_activation)) activate_inplace(layer.activation, next.values());
    cur = std::move(next);
  }
  out = std::move(cur);
}

Mlp make_mlp(std::span<const std::size_t> dims, Activation hidden,
             Activation output, Rng& rng) {
  if (dims.size() < 2) throw InvalidArgument("make_mlp needs at least input and output dims");
  Mlp mlp;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const std::size_t in = dims[l];
    const std::size_t out = dims[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    DenseLayer layer{Matrix(out, in), Vector(out),
                     l + 2 == dims.size() ? output : hidden};
    for (double& v : layer.w.values()) v = rng.uniform(-bound, bound);
    for (double& v : layer.b) v = rng.uniform(-bound, bound);
    mlp.layers.push_back(std::move(layer));
  }
  return mlp;
}

}  // namespace rnnprove::nn
