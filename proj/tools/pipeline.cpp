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

#include "pipeline.hpp"

#include <cmath>
#include <sstream>

#include "rnnprove/baseline/exact_oracle.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/feasibility/negatives.hpp"
#include "rnnprove/verifier/marl.hpp"

namespace rnnprove::cli {

TrainOutput train_run(const RunConfig& config) {
  config.validate();
  const rl::TaskSpec spec = rl::task_spec(config.task);
  TrainOutput out;
  out.run.task = spec;
  out.run.config = config.train;
  rl::TrainResult result;
  if (spec.kind == rl::EnvKind::kNav) {
    out.run.grid = env::generate_grid(spec.width, spec.height, config.layout_seed);
    const env::NavEnv nav(*out.run.grid, config.train.horizon);
    out.run.horizon = nav.horizon();
    result = rl::train_drqn(nav, config.train);
  } else {
    out.run.bp = env::make_bp_spec(spec.width, spec.height);
    const env::BoxPushingEnv bp(*out.run.bp, config.train.horizon);
    out.run.horizon = bp.horizon();
    result = rl::train_ctde_bp(bp, config.train);
  }
  out.run.agents = std::move(result.agents);
  out.log = std::move(result.log);
  return out;
}

feas::FeasibilityDataset collect_dataset(const rl::TrainedRun& run, const RunConfig& config,
                                         std::size_t agent) {
  if (agent >= run.agents.size())
    throw InvalidArgument("agent " + std::to_string(agent) + " out of range");
  feas::FeasibilityDataset d;
  if (run.grid) {
    d = feas::collect_nav(run.nav_env(), run.agents[agent].online, config.collect);
  } else {
    std::vector<const nn::RecurrentPolicy*> policies;
    for (const auto& b : run.agents) policies.push_back(&b.online);
    d = feas::collect_bp(run.bp_env(), policies, agent, config.collect);
  }
  if (d.rows.empty()) throw InvalidArgument("collection produced an empty dataset");
  return d;
}

ClassifierOutput train_feasibility(const feas::FeasibilityDataset& recorded,
                                   const RunConfig& config) {
  if (recorded.rows.empty()) throw InvalidArgument("empty dataset");
  const feas::FeasibilityDataset full = recorded.count(0) == 0
                                            ? feas::make_negatives(recorded, config.negatives)
                                            : recorded;
  const feas::TrainedClassifier trained = feas::train_classifier(full, config.classifier);
  ClassifierOutput out;
  out.classifier = trained.classifier;
  out.best_epoch = trained.best_epoch;
  out.report = feas::validate_classifier(trained.classifier, full, trained.split.validation,
                                         config.eps_clf, config.delta_clf);
  return out;
}

verify::Certificate verify_query(const verify::VerificationTask& task,
                                 const feas::FeasibilityClassifier* classifier,
                                 const feas::ClassifierReport* report, const RunConfig& config,
                                 VerifyMode mode) {
  const verify::PolicyMargin margin = task.margin();
  const verify::EstimatorConfig& ec = config.verify.estimator;
  if (mode == VerifyMode::kNaive)
    return verify::naive_monte_carlo(margin, config.verify.naive_samples, config.verify.delta, ec,
                                     task.name);
  if (!classifier || !report) throw InvalidArgument("filtered verification needs a classifier");
  const verify::ClassifierOracle oracle(*classifier, task.state_code);
  if (config.verify.samples > 0)
    return verify::estimate_fixed_draws(margin, oracle, config.verify.samples,
                                        config.verify.delta, *report, ec, task.name);
  const verify::ErrorBudget budget =
      verify::allocate_budget(config.verify.epsilon, config.verify.delta, report->e_hat);
  return verify::estimate_violation(margin, oracle, budget, ec, task.name, *report);
}

verify::Certificate verify_bp_marl(const rl::TrainedRun& run,
                                   const std::vector<feas::FeasibilityClassifier>& classifiers,
                                   const std::vector<feas::ClassifierReport>& reports,
                                   const RunConfig& config) {
  if (!run.bp) throw InvalidArgument("multi-agent verification needs a box pushing run");
  if (classifiers.size() != run.agents.size() || reports.size() != run.agents.size())
    throw InvalidArgument("multi-agent verification needs one classifier per agent (" +
                          std::to_string(run.agents.size()) + ")");
  if (config.verify.samples == 0)
    throw InvalidArgument("multi-agent verification needs a positive sample count");
  std::vector<verify::VerificationTask> tasks;
  std::vector<std::unique_ptr<verify::PolicyMargin>> margins;
  std::vector<std::unique_ptr<verify::ClassifierOracle>> oracles;
  std::vector<verify::AgentQuery> queries;
  for (std::size_t i = 0; i < run.agents.size(); ++i) {
    tasks.push_back(verify::bp_task(run, i));
    margins.push_back(std::make_unique<verify::PolicyMargin>(tasks.back().margin()));
    oracles.push_back(
        std::make_unique<verify::ClassifierOracle>(classifiers[i], tasks.back().state_code));
    queries.push_back({margins.back().get(), oracles.back().get(), reports[i], tasks.back().name});
  }
  return verify::verify_marl(queries, config.verify.samples, config.verify.delta,
                             config.verify.estimator);
}

baseline::ExactHistorySet enumerate_run(const rl::TrainedRun& run, const RunConfig& config) {
  if (!run.grid) throw InvalidArgument("exact enumeration is available for navigation runs only");
  baseline::EnumerationConfig ec;
  ec.cap = config.baseline.enumeration_cap;
  ec.merge_quantum = config.baseline.merge_quantum;
  const env::NavEnv nav = run.nav_env();
  return baseline::exact_history_enumeration(nav, run.agents.front().online, nav.horizon(), ec);
}

std::vector<HeatmapCell> heatmap_cells(const rl::TrainedRun& run,
                                       const std::vector<verify::Certificate>& certificates,
                                       const std::vector<verify::VerificationTask>& tasks) {
  if (!run.grid) throw InvalidArgument("heatmaps are available for navigation runs only");
  const env::NavEnv nav = run.nav_env();
  const std::vector<int> dist = env::bfs_distances(*run.grid, run.grid->start);
  std::vector<HeatmapCell> out;
  for (const env::Cell& c : nav.decision_cells()) {
    HeatmapCell h{c, dist[run.grid->index(c)] < 0 ? "unreachable" : "vacuous", 0.0, 0};
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].cell && *tasks[i].cell == c) {
        h.status = "verified";
        h.p_hat = certificates.at(i).p_hat;
        h.accepted = certificates.at(i).accepted;
      }
    out.push_back(h);
  }
  return out;
}

std::string heatmap_csv(const std::vector<HeatmapCell>& cells, const std::string& provenance) {
  std::ostringstream out;
  out << "# " << provenance << "\n";
  out << "x,y,p_hat,accepted,status\n";
  for (const auto& c : cells)
    out << c.cell.x << ',' << c.cell.y << ',' << format_real(c.p_hat) << ',' << c.accepted << ','
        << c.status << '\n';
  return out.str();
}

std::string heatmap_pgm(const rl::TrainedRun& run, const std::vector<HeatmapCell>& cells,
                        const std::string& provenance, int scale) {
  if (!run.grid) throw InvalidArgument("heatmaps are available for navigation runs only");
  if (scale < 1) throw InvalidArgument("heatmap scale must be positive");
  const env::GridSpec& g = *run.grid;
  std::vector<int> shade(g.cell_count(), 255);  // goal and unlisted free cells stay white
  for (std::size_t i = 0; i < g.cell_count(); ++i)
    if (g.is_obstacle(g.cell(i))) shade[i] = 0;
  for (const auto& c : cells)
    shade[g.index(c.cell)] =
        c.status == "verified" ? 255 - static_cast<int>(std::lround(191.0 * c.p_hat)) : 32;
  std::ostringstream out;
  out << "P2\n# " << provenance << "\n"
      << g.width * scale << ' ' << g.height * scale << "\n255\n";
  for (int y = 0; y < g.height * scale; ++y) {
    for (int x = 0; x < g.width * scale; ++x)
      out << (x ? " " : "") << shade[g.index({x / scale, y / scale})];
    out << '\n';
  }
  return out.str();
}

}  // namespace rnnprove::cli
