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
#include <span>
#include <string>

#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/feasibility/collect.hpp"
#include "rnnprove/feasibility/negatives.hpp"
#include "rnnprove/rl/config.hpp"
#include "rnnprove/verifier/estimator.hpp"

namespace YAML {
class Node;
}

namespace rnnprove::cli {

struct VerifyConfig {
  double epsilon = 0.05;
  double delta = 0.001;
  // 0: draw until the budget's accepted-sample target; otherwise draw
  // exactly this many samples and report the budget they support.
  std::size_t samples = 0;
  std::size_t naive_samples = 100000;
  verify::EstimatorConfig estimator;
};

struct BaselineConfig {
  std::size_t resolution = 0;  // 0: 16 up to n = 4, 6 beyond
  double cell_cap = 1e8;
  double exact_tau = 0.0625;
  std::size_t enumeration_cap = 10'000'000;
  double merge_quantum = 1e-9;
};

// Fully resolved pipeline configuration. Every command writes it next to
// its outputs and embeds its digest in every artifact.
struct RunConfig {
  std::string task = "nav4";
  std::uint64_t seed = 1;         // training seed
  std::uint64_t layout_seed = 1;  // navigation obstacle layout
  std::size_t workers = 1;
  rl::TrainConfig train;
  feas::ReplayConfig collect;
  feas::NegativeConfig negatives;
  feas::ClassifierConfig classifier;
  double eps_clf = 0.02;
  double delta_clf = 5e-4;
  VerifyConfig verify;
  BaselineConfig baseline;

  // Copies task, seed and workers into the nested sections.
  void sync();
  void validate() const;
};

RunConfig default_run_config(const std::string& task);
YAML::Node to_node(const RunConfig& config);
void apply_node(const YAML::Node& node, RunConfig& config);
std::string config_text(const RunConfig& config);
RunConfig parse_config_text(const std::string& text);

// Digest of the resolved config together with the digests of the input
// artifacts a command consumed.
std::string run_digest(const RunConfig& config, std::span<const std::string> input_digests);

}  // namespace rnnprove::cli
