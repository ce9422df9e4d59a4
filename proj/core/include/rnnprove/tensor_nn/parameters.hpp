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
#include <vector>

namespace rnnprove::nn {

struct GruCell;
struct Mlp;
struct RecurrentPolicy;

// Named view over one parameter array. Names are stable and ordered, so
// optimizer state can be matched to parameters by position.
struct ParamView {
  std::string name;
  std::span<double> values;
};

std::vector<ParamView> parameters(GruCell& cell, const std::string& prefix);
std::vector<ParamView> parameters(Mlp& mlp, const std::string& prefix);
std::vector<ParamView> parameters(RecurrentPolicy& policy);

}  // namespace rnnprove::nn
