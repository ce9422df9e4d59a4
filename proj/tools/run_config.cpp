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

#include "run_config.hpp"

#include <yaml-cpp/yaml.h>

#include "rnnprove/common/digest.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::cli {
namespace {

double real_of(const YAML::Node& n) { return parse_real(n.as<std::string>()); }

template <typename T>
void read(const YAML::Node& n, const char* key, T& out) {
  if (n[key]) out = n[key].as<T>();
}

void read_real(const YAML::Node& n, const char* key, double& out) {
  if (n[key]) out = real_of(n[key]);
}

YAML::Node flow_sequence(const std::vector<std::size_t>& values) {
  YAML::Node s(YAML::NodeType::Sequence);
  s.SetStyle(YAML::EmitterStyle::Flow);
  for (std::size_t v : values) s.push_back(v);
  return s;
}

}  // namespace

void RunConfig::sync() {
  train.task = task;
  train.seed = seed;
  verify.estimator.workers = workers;
}

void RunConfig::validate() const {
  rl::task_spec(task);
  train.validate();
  if (workers == 0) throw InvalidArgument("workers must be positive");
  if (!(eps_clf > 0.0 && eps_clf < 1.0 && delta_clf > 0.0 && delta_clf < 1.0))
    throw InvalidArgument("eps_clf and delta_clf must lie in (0, 1)");
  if (!(verify.epsilon > 0.0 && verify.epsilon < 1.0))
    throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!(verify.delta > 0.0 && verify.delta < 1.0))
    throw InvalidArgument("delta must lie in (0, 1)");
  if (verify.naive_samples == 0) throw InvalidArgument("naive_samples must be positive");
  if (!(baseline.exact_tau >= 0.0)) throw InvalidArgument("exact_tau must be non-negative");
  if (!(baseline.cell_cap > 0.0)) throw InvalidArgument("cell_cap must be positive");
}

RunConfig default_run_config(const std::string& task) {
  RunConfig c;
  c.task = rl::task_spec(task).name;
  c.train = rl::default_train_config(task);
  // Joint box-pushing rollouts yield far more distinct pairs per episode.
  if (rl::task_spec(task).kind == rl::EnvKind::kBoxPushing) c.collect.episodes = 2000;
  c.sync();
  return c;
}

YAML::Node to_node(const RunConfig& c) {
  YAML::Node n;
  n["format"] = "rnnprove-config";
  n["version"] = 1;
  n["task"] = c.task;
  n["seed"] = c.seed;
  n["layout_seed"] = c.layout_seed;
  n["workers"] = c.workers;

  YAML::Node train = rl::to_node(c.train);
  train.remove("task");
  train.remove("seed");
  n["train"] = train;

  YAML::Node col;
  col["episodes"] = c.collect.episodes;
  col["epsilon_start"] = format_real(c.collect.epsilon_start);
  col["epsilon_end"] = format_real(c.collect.epsilon_end);
  col["seed"] = c.collect.seed;
  col["target_pairs"] = c.collect.target_pairs;
  col["max_episodes"] = c.collect.max_episodes;
  col["dedupe_quantum"] = format_real(c.collect.collect.dedupe_quantum);
  col["per_state_cap"] = c.collect.collect.per_state_cap;
  n["collect"] = col;

  YAML::Node neg;
  neg["ratio"] = format_real(c.negatives.ratio);
  neg["tau"] = format_real(c.negatives.tau);
  neg["seed"] = c.negatives.seed;
  n["negatives"] = neg;

  YAML::Node clf;
  clf["hidden_layers"] = flow_sequence(c.classifier.hidden_layers);
  clf["lr"] = format_real(c.classifier.lr);
  clf["epochs"] = c.classifier.epochs;
  clf["batch_size"] = c.classifier.batch_size;
  clf["train_fraction"] = format_real(c.classifier.train_fraction);
  clf["selection_fraction"] = format_real(c.classifier.selection_fraction);
  clf["threshold"] = format_real(c.classifier.threshold);
  clf["seed"] = c.classifier.seed;
  clf["eps_clf"] = format_real(c.eps_clf);
  clf["delta_clf"] = format_real(c.delta_clf);
  n["classifier"] = clf;

  YAML::Node ver;
  ver["epsilon"] = format_real(c.verify.epsilon);
  ver["delta"] = format_real(c.verify.delta);
  ver["samples"] = c.verify.samples;
  ver["naive_samples"] = c.verify.naive_samples;
  ver["seed"] = c.verify.estimator.seed;
  ver["chunk"] = c.verify.estimator.chunk;
  ver["draw_cap_factor"] = format_real(c.verify.estimator.draw_cap_factor);
  ver["acceptance_floor"] = format_real(c.verify.estimator.acceptance_floor);
  ver["min_draws_for_floor"] = c.verify.estimator.min_draws_for_floor;
  n["verify"] = ver;

  YAML::Node base;
  base["resolution"] = c.baseline.resolution;
  base["cell_cap"] = format_real(c.baseline.cell_cap);
  base["exact_tau"] = format_real(c.baseline.exact_tau);
  base["enumeration_cap"] = c.baseline.enumeration_cap;
  base["merge_quantum"] = format_real(c.baseline.merge_quantum);
  n["baseline"] = base;
  return n;
}

void apply_node(const YAML::Node& n, RunConfig& c) {
  if (!n || !n.IsMap()) throw FormatError("config: expected a mapping at the top level");
  try {
    if (n["task"]) {
      // A different task resets the task-dependent training defaults.
      const std::string task = n["task"].as<std::string>();
      if (task != c.task) {
        c.task = rl::task_spec(task).name;
        c.train = rl::default_train_config(task);
      }
    }
    read(n, "seed", c.seed);
    read(n, "layout_seed", c.layout_seed);
    read(n, "workers", c.workers);
    if (n["train"]) rl::apply_node(n["train"], c.train);
    if (const YAML::Node col = n["collect"]) {
      read(col, "episodes", c.collect.episodes);
      read_real(col, "epsilon_start", c.collect.epsilon_start);
      read_real(col, "epsilon_end", c.collect.epsilon_end);
      read(col, "seed", c.collect.seed);
      read(col, "target_pairs", c.collect.target_pairs);
      read(col, "max_episodes", c.collect.max_episodes);
      read_real(col, "dedupe_quantum", c.collect.collect.dedupe_quantum);
      read(col, "per_state_cap", c.collect.collect.per_state_cap);
    }
    if (const YAML::Node neg = n["negatives"]) {
      read_real(neg, "ratio", c.negatives.ratio);
      read_real(neg, "tau", c.negatives.tau);
      read(neg, "seed", c.negatives.seed);
    }
    if (const YAML::Node clf = n["classifier"]) {
      read(clf, "hidden_layers", c.classifier.hidden_layers);
      read_real(clf, "lr", c.classifier.lr);
      read(clf, "epochs", c.classifier.epochs);
      read(clf, "batch_size", c.classifier.batch_size);
      read_real(clf, "train_fraction", c.classifier.train_fraction);
      read_real(clf, "selection_fraction", c.classifier.selection_fraction);
      read_real(clf, "threshold", c.classifier.threshold);
      read(clf, "seed", c.classifier.seed);
      read_real(clf, "eps_clf", c.eps_clf);
      read_real(clf, "delta_clf", c.delta_clf);
    }
    if (const YAML::Node ver = n["verify"]) {
      read_real(ver, "epsilon", c.verify.epsilon);
      read_real(ver, "delta", c.verify.delta);
      read(ver, "samples", c.verify.samples);
      read(ver, "naive_samples", c.verify.naive_samples);
      read(ver, "seed", c.verify.estimator.seed);
      read(ver, "chunk", c.verify.estimator.chunk);
      read_real(ver, "draw_cap_factor", c.verify.estimator.draw_cap_factor);
      read_real(ver, "acceptance_floor", c.verify.estimator.acceptance_floor);
      read(ver, "min_draws_for_floor", c.verify.estimator.min_draws_for_floor);
    }
    if (const YAML::Node base = n["baseline"]) {
      read(base, "resolution", c.baseline.resolution);
      read_real(base, "cell_cap", c.baseline.cell_cap);
      read_real(base, "exact_tau", c.baseline.exact_tau);
      read(base, "enumeration_cap", c.baseline.enumeration_cap);
      read_real(base, "merge_quantum", c.baseline.merge_quantum);
    }
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  c.sync();
}

std::string config_text(const RunConfig& config) {
  YAML::Emitter out;
  out << to_node(config);
  return std::string(out.c_str()) + "\n";
}

RunConfig parse_config_text(const std::string& text) {
  YAML::Node n;
  try {
    n = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  if (!n || !n.IsMap()) throw FormatError("config: expected a mapping at the top level");
  RunConfig c = default_run_config(n["task"] ? n["task"].as<std::string>() : "nav4");
  apply_node(n, c);
  return c;
}

std::string run_digest(const RunConfig& config, std::span<const std::string> input_digests) {
  std::string bytes = config_text(config);
  for (const auto& d : input_digests) bytes += "input " + d + "\n";
  return digest_string(bytes);
}

}  // namespace rnnprove::cli
