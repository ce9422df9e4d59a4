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

#include "rnnprove/rl/bundle_io.hpp"

#include <yaml-cpp/yaml.h>

#include "rnnprove/common/digest.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/tensor_nn/checkpoint.hpp"

namespace rnnprove::rl {
namespace {

YAML::Node require(const YAML::Node& parent, const char* key) {
  YAML::Node found = parent[key];
  if (!found) throw FormatError(std::string("run checkpoint: missing key '") + key + "'");
  return found;
}

YAML::Node moments_node(const std::vector<std::vector<double>>& moments) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (const auto& m : moments) n.push_back(real_sequence(m));
  return n;
}

std::vector<std::vector<double>> moments_from(const YAML::Node& n) {
  std::vector<std::vector<double>> out;
  for (const auto& item : n) out.push_back(read_real_sequence(item));
  return out;
}

YAML::Node cell_node(env::Cell c) {
  YAML::Node n(YAML::NodeType::Sequence);
  n.SetStyle(YAML::EmitterStyle::Flow);
  n.push_back(c.x);
  n.push_back(c.y);
  return n;
}

env::Cell cell_from(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != 2) throw FormatError("run checkpoint: cell must be [x, y]");
  return {n[0].as<int>(), n[1].as<int>()};
}

}  // namespace

env::NavEnv TrainedRun::nav_env() const {
  if (!grid) throw StateError("run '" + task.name + "' is not a navigation task");
  return env::NavEnv(*grid, horizon);
}

env::BoxPushingEnv TrainedRun::bp_env() const {
  if (!bp) throw StateError("run '" + task.name + "' is not a box pushing task");
  return env::BoxPushingEnv(*bp, horizon);
}

std::string save_run_text(const TrainedRun& run) {
  YAML::Node doc;
  doc["format"] = "rnnprove-checkpoint";
  doc["version"] = 1;
  doc["kind"] = "trained_run";
  doc["task"] = run.task.name;
  doc["config_digest"] = run.config_digest;
  doc["config"] = to_node(run.config);
  doc["horizon"] = run.horizon;
  if (run.grid) {
    doc["environment"]["kind"] = "nav";
    doc["environment"]["grid"] = env::serialize_grid(*run.grid);
  } else if (run.bp) {
    doc["environment"]["kind"] = "box_pushing";
    doc["environment"]["width"] = run.bp->width;
    doc["environment"]["height"] = run.bp->height;
    doc["environment"]["box"] = cell_node(run.bp->box);
    YAML::Node starts(YAML::NodeType::Sequence);
    for (const auto& s : run.bp->starts) starts.push_back(cell_node(s));
    doc["environment"]["starts"] = starts;
    YAML::Node facing(YAML::NodeType::Sequence);
    facing.SetStyle(YAML::EmitterStyle::Flow);
    for (auto f : run.bp->start_facing) facing.push_back(static_cast<int>(f));
    doc["environment"]["start_facing"] = facing;
  } else {
    throw InvalidArgument("trained run has no environment layout");
  }
  YAML::Node agents(YAML::NodeType::Sequence);
  for (const auto& b : run.agents) {
    YAML::Node a;
    a["online"] = nn::to_node(b.online);
    a["target"] = nn::to_node(b.target);
    a["train_steps"] = b.train_steps;
    a["optimizer"]["step"] = b.optimizer.step_index();
    a["optimizer"]["m"] = moments_node(b.optimizer.first_moments());
    a["optimizer"]["v"] = moments_node(b.optimizer.second_moments());
    agents.push_back(a);
  }
  doc["agents"] = agents;
  return nn::emit_document(doc);
}

TrainedRun load_run_text(const std::string& text) {
  const YAML::Node doc = nn::parse_document(text);
  if (!doc["kind"] || doc["kind"].as<std::string>() != "trained_run")
    throw FormatError("run checkpoint: not a trained_run document");
  try {
    TrainedRun run;
    run.task = task_spec(require(doc, "task").as<std::string>());
    run.config = default_train_config(run.task.name);
    apply_node(require(doc, "config"), run.config);
    run.config_digest = require(doc, "config_digest").as<std::string>();
    run.horizon = require(doc, "horizon").as<int>();
    const YAML::Node e = require(doc, "environment");
    const std::string kind = require(e, "kind").as<std::string>();
    if (kind == "nav") {
      run.grid = env::parse_grid(require(e, "grid").as<std::string>());
    } else if (kind == "box_pushing") {
      env::BpSpec s;
      s.width = require(e, "width").as<int>();
      s.height = require(e, "height").as<int>();
      s.box = cell_from(require(e, "box"));
      const YAML::Node starts = require(e, "starts");
      const YAML::Node facing = require(e, "start_facing");
      for (std::size_t i = 0; i < env::kBpAgents; ++i) {
        s.starts[i] = cell_from(starts[i]);
        s.start_facing[i] = static_cast<env::Direction>(facing[i].as<int>());
      }
      run.bp = s;
    } else {
      throw FormatError("run checkpoint: unknown environment kind '" + kind + "'");
    }
    for (const auto& a : require(doc, "agents")) {
      PolicyBundle b;
      b.online = nn::policy_from_node(require(a, "online"));
      b.target = nn::policy_from_node(require(a, "target"));
      b.train_steps = require(a, "train_steps").as<std::int64_t>();
      const YAML::Node opt = require(a, "optimizer");
      b.optimizer.restore(require(opt, "step").as<std::int64_t>(), moments_from(require(opt, "m")),
                          moments_from(require(opt, "v")));
      run.agents.push_back(std::move(b));
    }
    if (run.agents.empty()) throw FormatError("run checkpoint: no agents");
    return run;
  } catch (const YAML::Exception& ex) {
    throw FormatError(std::string("run checkpoint: ") + ex.what());
  }
}

TrainedRun load_run_file(const std::string& path) { return load_run_text(read_text_file(path)); }

}  // namespace rnnprove::rl
