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
#include <span>
#include <vector>

#include "rnnprove/tensor_nn/parameters.hpp"
#include "rnnprove/tensor_nn/tape.hpp"

namespace rnnprove::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam. Moment buffers are matched to parameters by position
// and allocated on the first update.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  void update(std::span<const ParamView> params, const Gradients& grads,
              double lr);
  // Same as update() with gradients supplied positionally.
  void update(std::span<const ParamView> params,
              std::span<const std::vector<double>> grads, double lr);

  std::int64_t step_index() const { return step_; }
  const AdamConfig& config() const { return config_; }
  const std::vector<std::vector<double>>& first_moments() const { return m_; }
  const std::vector<std::vector<double>>& second_moments() const { return v_; }
  void restore(std::int64_t step, std::vector<std::vector<double>> m,
               std::vector<std::vector<double>> v);

 private:
  AdamConfig config_;
  std::int64_t step_ = 0;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
};

}  // namespace rnnprove::nn
