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

#include "rnnprove/tensor_nn/adam.hpp"

#include <cmath>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::nn {

void Adam::update(std::span<const ParamView> params, const Gradients& grads,
                  double lr) {
  std::vector<std::vector<double>> positional;
  positional.reserve(params.size());
  for (const auto& p : params) positional.push_back(grads.of(std::span<const double>(p.values)));
  update(params, positional, lr);
}

void Adam::update(std::span<const ParamView> params,
                  std::span<const std::vector<double>> grads, double lr) {
  if (grads.size() != params.size())
    throw DimensionError("Adam: gradient count does not match parameter count");
  if (m_.empty()) {
    for (const auto& p : params) {
      m_.emplace_back(p.values.size(), 0.0);
      v_.emplace_back(p.values.size(), 0.0);
    }
  }
  if (m_.size() != params.size())
    throw DimensionError("Adam: parameter list changed between updates");
  for (std::size_t k = 0; k < params.size(); ++k)
    if (params[k].values.size() != m_[k].size() || grads[k].size() != m_[k].size())
      throw DimensionError("Adam: shape mismatch for " + params[k].name);

  ++step_;
  const double t = static_cast<double>(step_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto& m = m_[k];
    auto& v = v_[k];
    const auto& g = grads[k];
    auto values = params[k].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g[i];
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      values[i] -= lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
  }
}

void Adam::restore(std::int64_t step, std::vector<std::vector<double>> m,
                   std::vector<std::vector<double>> v) {
  if (m.size() != v.size()) throw DimensionError("Adam::restore: moment count mismatch");
  step_ = step;
  m_ = std::move(m);
  v_ = std::move(v);
}

}  // namespace rnnprove::nn
