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

#include <span>
#include <string>
#include <string_view>

namespace rnnprove::nn {

enum class Activation { kIdentity, kRelu, kTanh, kSigmoid };

double sigmoid(double x);
double activate(Activation a, double x);
void activate_inplace(Activation a, std::span<double> values);
// Derivative expressed through the activation's output y = activate(a, x).
double derivative_from_output(Activation a, double y);

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

}  // namespace rnnprove::nn
