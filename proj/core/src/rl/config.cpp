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

#include "rnnprove/rl/config.hpp"

#include <yaml-cpp/yaml.h>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::rl {
namespace {

const std::vector<TaskSpec>& registry() {
  static const std::vector<TaskSpec> tasks{
      {"nav4", EnvKind::kNav, 4, 4, 4, 6000},
      {"nav8", EnvKind::kNav, 8, 8, 8, 6000},
      {"nav16", EnvKind::kNav, 16, 16, 12, 3000},
      {"bp10", EnvKind::kBoxPushing, 10, 10, 16, 3000},
      {"bp20", EnvKind::kBoxPushing, 20, 20, 32, 2000},
  };
  return tasks;
}

double real_of(const YAML::Node& n) { return parse_real(n.as<std::string>()); }

}  // namespace

TaskSpec task_spec(const std::string& name) {
  for (const auto& t : registry())
    if (t.name == name) return t;
  std::string known;
  for (const auto& t : registry()) known += (known.empty() ? "" : ", ") + t.name;
  throw InvalidArgument("unknown task '" + name + "' (expected one of: " + known + ")");
}

std::vector<std::string> task_names() {
  std::vector<std::string> names;
  for (const auto& t : registry()) names.push_back(t.name);
  return names;
}

void TrainConfig::validate() const {
  task_spec(task);
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must be in [0, 1)");
  if (!(lr > 0.0)) throw InvalidArgument("lr must be positive");
  if (batch_size == 0) throw InvalidArgument("batch_size must be positive");
  if (!(polyak > 0.0 && polyak <= 1.0)) throw InvalidArgument("polyak must be in (0, 1]");
  if (gru_hidden == 0) throw InvalidArgument("gru_hidden must be positive");
  for (std::size_t h : mlp_hidden)
    if (h == 0) throw InvalidArgument("mlp_hidden sizes must be positive");
  if (buffer_capacity == 0) throw InvalidArgument("buffer_capacity must be positive");
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0 && epsilon_end >= 0.0 && epsilon_end <= 1.0))
    throw InvalidArgument("epsilon schedule must lie in [0, 1]");
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0))
    throw InvalidArgument("epsilon_decay_fraction must lie in [0, 1]");
}

double TrainConfig::epsilon_at(std::size_t episode) const {
  const double span = epsilon_decay_fraction * static_cast<double>(episodes);
  if (span <= 0.0 || static_cast<double>(episode) >= span) return epsilon_end;
  return epsilon_start + (epsilon_end - epsilon_start) * (static_cast<double>(episode) / span);
}

TrainConfig default_train_config(const std::string& task) {
  const TaskSpec spec = task_spec(task);
  TrainConfig c;
  c.task = spec.name;
  c.gru_hidden = spec.gru_hidden;
  c.episodes = spec.default_episodes;
  return c;
}

YAML::Node to_node(const TrainConfig& c) {
  YAML::Node n;
  n["task"] = c.task;
  n["seed"] = c.seed;
  n["gamma"] = format_real(c.gamma);
  n["lr"] = format_real(c.lr);
  n["batch_size"] = c.batch_size;
  n["polyak"] = format_real(c.polyak);
  n["gru_hidden"] = c.gru_hidden;
  YAML::Node hidden(YAML::NodeType::Sequence);
  hidden.SetStyle(YAML::EmitterStyle::Flow);
  for (std::size_t h : c.mlp_hidden) hidden.push_back(h);
  n["mlp_hidden"] = hidden;
  n["episodes"] = c.episodes;
  n["buffer_capacity"] = c.buffer_capacity;
  n["epsilon_start"] = format_real(c.epsilon_start);
  n["epsilon_end"] = format_real(c.epsilon_end);
  n["epsilon_decay_fraction"] = format_real(c.epsilon_decay_fraction);
  n["horizon"] = c.horizon;
  return n;
}

void apply_node(const YAML::Node& n, TrainConfig& c) {
  if (!n || !n.IsMap()) return;
  try {
    if (n["task"]) c.task = n["task"].as<std::string>();
    if (n["seed"]) c.seed = n["seed"].as<std::uint64_t>();
    if (n["gamma"]) c.gamma = real_of(n["gamma"]);
    if (n["lr"]) c.lr = real_of(n["lr"]);
    if (n["batch_size"]) c.batch_size = n["batch_size"].as<std::size_t>();
    if (n["polyak"]) c.polyak = real_of(n["polyak"]);
    if (n["gru_hidden"]) c.gru_hidden = n["gru_hidden"].as<std::size_t>();
    if (n["mlp_hidden"]) c.mlp_hidden = n["mlp_hidden"].as<std::vector<std::size_t>>();
    if (n["episodes"]) c.episodes = n["episodes"].as<std::size_t>();
    if (n["buffer_capacity"]) c.buffer_capacity = n["buffer_capacity"].as<std::size_t>();
    if (n["epsilon_start"]) c.epsilon_start = real_of(n["epsilon_start"]);
    if (n["epsilon_end"]) c.epsilon_end = real_of(n["epsilon_end"]);
    if (n["epsilon_decay_fraction"])
      c.epsilon_decay_fraction = real_of(n["epsilon_decay_fraction"]);
    if (n["horizon"]) c.horizon = n["horizon"].as<int>();
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("train config: ") + e.what());
  }
}

}  // namespace rnnprove::rl
