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

#include "rnnprove/tensor_nn/checkpoint.hpp"

#include <yaml-cpp/yaml.h>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::nn {
namespace {

YAML::Node require(const YAML::Node& parent, const char* key) {
  YAML::Node found = parent[key];
  if (!found) throw FormatError(std::string("checkpoint: missing key '") + key + "'");
  return found;
}

YAML::Node gate_node(const GateParams& g) {
  YAML::Node n;
  n["w_x"] = to_node(g.w_x);
  n["w_h"] = to_node(g.w_h);
  n["b"] = real_sequence(g.b);
  return n;
}

GateParams gate_from_node(const YAML::Node& n) {
  GateParams g;
  g.w_x = matrix_from_node(require(n, "w_x"));
  g.w_h = matrix_from_node(require(n, "w_h"));
  g.b = read_real_sequence(require(n, "b"));
  return g;
}

}  // namespace

YAML::Node to_node(const Matrix& m) {
  YAML::Node n;
  n["rows"] = m.rows();
  n["cols"] = m.cols();
  n["data"] = real_sequence(m.values());
  return n;
}

Matrix matrix_from_node(const YAML::Node& node) {
  const auto rows = require(node, "rows").as<std::size_t>();
  const auto cols = require(node, "cols").as<std::size_t>();
  return Matrix(rows, cols, read_real_sequence(require(node, "data")));
}

YAML::Node to_node(const GruCell& cell) {
  YAML::Node n;
  n["input_dim"] = cell.input_dim();
  n["hidden_dim"] = cell.hidden_dim();
  n["update"] = gate_node(cell.update);
  n["reset"] = gate_node(cell.reset);
  n["candidate"] = gate_node(cell.candidate);
  return n;
}

GruCell gru_from_node(const YAML::Node& node) {
  GruCell cell;
  cell.update = gate_from_node(require(node, "update"));
  cell.reset = gate_from_node(require(node, "reset"));
  cell.candidate = gate_from_node(require(node, "candidate"));
  cell.validate();
  if (cell.input_dim() != require(node, "input_dim").as<std::size_t>() ||
      cell.hidden_dim() != require(node, "hidden_dim").as<std::size_t>())
    throw FormatError("checkpoint: GRU dims disagree with weight shapes");
  return cell;
}

YAML::Node to_node(const Mlp& mlp) {
  YAML::Node n;
  YAML::Node layers(YAML::NodeType::Sequence);
  for (const auto& layer : mlp.layers) {
    YAML::Node l;
    l["activation"] = std::string(activation_name(layer.activation));
    l["w"] = to_node(layer.w);
    l["b"] = real_sequence(layer.b);
    layers.push_back(l);
  }
  n["layers"] = layers;
  return n;
}

Mlp mlp_from_node(const YAML::Node& node) {
  Mlp mlp;
  for (const auto& l : require(node, "layers")) {
    DenseLayer layer;
    layer.activation = parse_activation(require(l, "activation").as<std::string>());
    layer.w = matrix_from_node(require(l, "w"));
    layer.b = read_real_sequence(require(l, "b"));
    mlp.layers.push_back(std::move(layer));
  }
  mlp.validate();
  return mlp;
}

YAML::Node to_node(const RecurrentPolicy& policy) {
  YAML::Node n;
  n["gru"] = to_node(policy.gru);
  n["head"] = to_node(policy.head);
  return n;
}

RecurrentPolicy policy_from_node(const YAML::Node& node) {
  RecurrentPolicy p;
  p.gru = gru_from_node(require(node, "gru"));
  p.head = mlp_from_node(require(node, "head"));
  p.validate();
  return p;
}

std::string emit_document(const YAML::Node& node) {
  YAML::Emitter out;
  out << node;
  if (!out.good()) throw FormatError("checkpoint: emitter error: " + out.GetLastError());
  return std::string(out.c_str()) + "\n";
}

YAML::Node parse_document(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

std::string save_policy_text(const RecurrentPolicy& policy) {
  YAML::Node doc;
  doc["format"] = "rnnprove-checkpoint";
  doc["version"] = 1;
  doc["kind"] = "recurrent_policy";
  doc["policy"] = to_node(policy);
  return emit_document(doc);
}

RecurrentPolicy load_policy_text(const std::string& text) {
  const YAML::Node doc = parse_document(text);
  if (!doc["kind"] || doc["kind"].as<std::string>() != "recurrent_policy")
    throw FormatError("checkpoint: not a recurrent_policy document");
  return policy_from_node(require(doc, "policy"));
}

}  // namespace rnnprove::nn
