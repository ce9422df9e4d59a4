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

#include <string>

#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"
#include "rnnprove/tensor_nn/policy.hpp"

namespace YAML {
class Node;
}

namespace rnnprove::nn {

// Checkpoints are YAML documents holding dims, activation names and weights
// as round-trip decimals; loading a saved file reproduces every
// parameter bitwise.
YAML::Node to_node(const Matrix& m);
Matrix matrix_from_node(const YAML::Node& node);
YAML::Node to_node(const GruCell& cell);
GruCell gru_from_node(const YAML::Node& node);
YAML::Node to_node(const Mlp& mlp);
Mlp mlp_from_node(const YAML::Node& node);
YAML::Node to_node(const RecurrentPolicy& policy);
RecurrentPolicy policy_from_node(const YAML::Node& node);

std::string emit_document(const YAML::Node& node);
YAML::Node parse_document(const std::string& text);

std::string save_policy_text(const RecurrentPolicy& policy);
RecurrentPolicy load_policy_text(const std::string& text);

}  // namespace rnnprove::nn
