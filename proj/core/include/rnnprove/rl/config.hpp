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
#include <cstdint>
#include <string>
#include <vector>

namespace YAML {
class Node;
}

namespace rnnprove::rl {

enum class EnvKind { kNav, kBoxPushing };

// Named benchmark instance: nav4, nav8, nav16, bp10, bp20.
struct TaskSpec {
  std::string name;
  EnvKind kind = EnvKind::kNav;
  int width = 0;
  int height = 0;
  std::size_t gru_hidden = 0;
  std::size_t default_episodes = 0;
};

// Throws InvalidArgument for unknown names.
TaskSpec task_spec(const std::string& name);
std::vector<std::string> task_names();

struct TrainConfig {
  std::string task = "nav4";
  std::uint64_t seed = 1;
  double gamma = 0.9;
  double lr = 3e-4;
  std::size_t batch_size = 32;
  double polyak = 0.995;
  std::size_t gru_hidden = 4;
  std::vector<std::size_t> mlp_hidden{32, 32};
  std::size_t episodes = 3000;
  std::size_t buffer_capacity = 1000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  // Fraction of the episode budget over which epsilon anneals linearly.
  double epsilon_decay_fraction = 0.5;
  // <= 0 selects the environment default 4 * (width + height).
  int horizon = 0;

  void validate() const;
  double epsilon_at(std::size_t episode) const;
};

TrainConfig default_train_config(const std::string& task);
YAML::Node to_node(const TrainConfig& config);
// Missing keys keep the values already in `config`.
void apply_node(const YAML::Node& node, TrainConfig& config);

}  // namespace rnnprove::rl
