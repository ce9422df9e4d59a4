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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rnnprove/baseline/enumeration.hpp"
#include "rnnprove/baseline/volume.hpp"
#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/feasibility/dataset.hpp"
#include "rnnprove/rl/bundle_io.hpp"
#include "rnnprove/verifier/certificate.hpp"
#include "rnnprove/verifier/tasks.hpp"
#include "run_config.hpp"

namespace rnnprove::cli {

// Pipeline stages shared by the command line tool and the acceptance
// suite. Each is a pure function of its inputs and the resolved config.

struct TrainOutput {
  rl::TrainedRun run;
  std::vector<rl::TrainLogRow> log;
};
TrainOutput train_run(const RunConfig& config);

feas::FeasibilityDataset collect_dataset(const rl::TrainedRun& run, const RunConfig& config,
                                         std::size_t agent = 0);

struct ClassifierOutput {
  feas::FeasibilityClassifier classifier;
  feas::ClassifierReport report;
  std::size_t best_epoch = 0;
};
// Adds negatives to the recorded pairs, trains, and validates on the
// held-out split at (eps_clf, delta_clf).
ClassifierOutput train_feasibility(const feas::FeasibilityDataset& recorded,
                                   const RunConfig& config);

enum class VerifyMode { kFiltered, kNaive };

// Filtered modes need a classifier; the naive mode ignores it.
verify::Certificate verify_query(const verify::VerificationTask& task,
                                 const feas::FeasibilityClassifier* classifier,
                                 const feas::ClassifierReport* report, const RunConfig& config,
                                 VerifyMode mode);

// Box pushing: one classifier per agent, max-aggregated over agents at the
// configured sample count.
verify::Certificate verify_bp_marl(const rl::TrainedRun& run,
                                   const std::vector<feas::FeasibilityClassifier>& classifiers,
                                   const std::vector<feas::ClassifierReport>& reports,
                                   const RunConfig& config);

// Exact feasible set of a navigation run over its full horizon.
baseline::ExactHistorySet enumerate_run(const rl::TrainedRun& run, const RunConfig& config);

// Per-cell heatmap of a set of navigation certificates.
struct HeatmapCell {
  env::Cell cell;
  std::string status;  // verified, vacuous, unreachable
  double p_hat = 0.0;
  std::size_t accepted = 0;
};
std::vector<HeatmapCell> heatmap_cells(const rl::TrainedRun& run,
                                       const std::vector<verify::Certificate>& certificates,
                                       const std::vector<verify::VerificationTask>& tasks);
std::string heatmap_csv(const std::vector<HeatmapCell>& cells, const std::string& provenance);
// Plain (P2) graymap, `scale` pixels per cell: obstacles black, unverified
// cells dark gray, verified cells from white (no violations) towards gray.
std::string heatmap_pgm(const rl::TrainedRun& run, const std::vector<HeatmapCell>& cells,
                        const std::string& provenance, int scale = 8);

}  // namespace rnnprove::cli
