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

#include "rnnprove/verifier/estimator.hpp"

#include <chrono>
#include <cmath>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/parallel.hpp"
#include "rnnprove/common/philox.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::verify {
namespace {

using Clock = std::chrono::steady_clock;

nn::Matrix draw_block(const CounterStream& stream, std::uint64_t first, std::size_t count,
                      std::size_t dim) {
  nn::Matrix h(count, dim);
  for (std::size_t k = 0; k < count; ++k) stream.uniform(first + k, -1.0, 1.0, h.row(k));
  return h;
}

// Evaluates draws [first, first + count): oracle on all, margin on accepted.
void evaluate_block(const MarginModel& model, const FeasibilityOracle* oracle,
                    const CounterStream& stream, std::uint64_t first, std::size_t count,
                    SampleOutcome* out) {
  const nn::Matrix h = draw_block(stream, first, count, model.hidden_dim());
  std::vector<std::uint8_t> accepted;
  if (oracle)
    oracle->accept_batch(h, accepted);
  else
    accepted.assign(count, 1);
  std::size_t kept = 0;
  for (std::uint8_t a : accepted) kept += a;
  nn::Matrix feasible(kept, h.cols());
  for (std::size_t k = 0, r = 0; k < count; ++k)
    if (accepted[k]) {
      const auto src = h.row(k);
      std::copy(src.begin(), src.end(), feasible.row(r++).begin());
    }
  std::vector<double> margins;
  model.margins(feasible, margins);
  for (std::size_t k = 0, r = 0; k < count; ++k) {
    out[k].accepted = accepted[k] != 0;
    out[k].violating = out[k].accepted && margins[r++] <= 0.0;
  }
}

std::vector<SampleOutcome> outcomes_for(const MarginModel& model, const FeasibilityOracle* oracle,
                                        const CounterStream& stream, std::uint64_t first,
                                        std::size_t count, std::size_t workers) {
  std::vector<SampleOutcome> out(count);
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(blocks, workers, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t begin = b * kBlock;
      const std::size_t n = std::min(kBlock, count - begin);
      evaluate_block(model, oracle, stream, first + begin, n, out.data() + begin);
    }
  });
  return out;
}

Witness make_witness(const MarginModel& model, const CounterStream& stream, std::uint64_t index) {
  Witness w;
  w.sample_index = index;
  w.hidden.resize(model.hidden_dim());
  stream.uniform(index, -1.0, 1.0, w.hidden);
  nn::Matrix h(1, w.hidden.size(), w.hidden);
  std::vector<double> m;
  model.margins(h, m);
  w.margin = m[0];
  return w;
}

struct Tally {
  std::size_t drawn = 0;
  std::size_t accepted = 0;
  std::size_t violations = 0;
  std::optional<std::uint64_t> first_violation;
};

// Draws in index order until `stop_accepted` accepted samples (0 = never)
// or `max_draws` draws; `floor` aborts on a low acceptance rate.
Tally run(const MarginModel& model, const FeasibilityOracle* oracle, const CounterStream& stream,
          std::size_t stop_accepted, std::size_t max_draws, const EstimatorConfig& config,
          bool use_floor, bool* floor_hit) {
  Tally t;
  while (t.drawn < max_draws && (stop_accepted == 0 || t.accepted < stop_accepted)) {
    const std::size_t count = std::min(config.chunk, max_draws - t.drawn);
    const auto block = outcomes_for(model, oracle, stream, t.drawn, count, config.workers);
    std::size_t k = 0;
    for (; k < count; ++k) {
      if (!block[k].accepted) continue;
      ++t.accepted;
      if (block[k].violating) {
        ++t.violations;
        if (!t.first_violation) t.first_violation = t.drawn + k;
      }
      if (stop_accepted != 0 && t.accepted == stop_accepted) {
        ++k;
        break;
      }
    }
    t.drawn += k;
    if (use_floor && t.drawn >= config.min_draws_for_floor &&
        static_cast<double>(t.accepted) < config.acceptance_floor * static_cast<double>(t.drawn)) {
      *floor_hit = true;
      break;
    }
  }
  return t;
}

void fill(Certificate& c, const MarginModel& model, const CounterStream& stream, const Tally& t,
          const EstimatorConfig& config) {
  c.hidden_dim = model.hidden_dim();
  c.volume_h = std::ldexp(1.0, static_cast<int>(c.hidden_dim));
  c.drawn = t.drawn;
  c.accepted = t.accepted;
  c.violations = t.violations;
  c.p_hat = t.accepted ? static_cast<double>(t.violations) / static_cast<double>(t.accepted) : 0.0;
  c.v_tilde = c.volume_h * c.p_hat;
  c.h_normalized = t.drawn ? static_cast<double>(t.violations) / static_cast<double>(t.drawn) : 0.0;
  if (t.first_violation) c.witness = make_witness(model, stream, *t.first_violation);
  c.seed = config.seed;
  c.workers = config.workers;
}

void check_config(const EstimatorConfig& config) {
  if (config.chunk == 0) throw InvalidArgument("estimator chunk must be positive");
  if (config.workers == 0) throw InvalidArgument("estimator needs at least one worker");
}

}  // namespace

std::vector<SampleOutcome> sample_outcomes(const MarginModel& model,
                                           const FeasibilityOracle& oracle, std::uint64_t seed,
                                           std::uint64_t first, std::size_t count,
                                           std::size_t workers) {
  return outcomes_for(model, &oracle, CounterStream(seed), first, count, workers);
}

Certificate estimate_violation(const MarginModel& model, const FeasibilityOracle& oracle,
                               const ErrorBudget& budget, const EstimatorConfig& config,
                               const std::string& task,
                               const std::optional<feas::ClassifierReport>& report) {
  check_config(config);
  budget.check();
  if (report && report->validation_size < required_samples(budget.eps_clf, budget.delta_clf))
    throw InsufficientValidation(
        "classifier validated on " + std::to_string(report->validation_size) +
            " rows; this budget's eps_clf/delta_clf require " +
            std::to_string(required_samples(budget.eps_clf, budget.delta_clf)),
        required_samples(budget.eps_clf, budget.delta_clf));
  const auto start = Clock::now();
  const std::size_t target = required_samples(budget.eps_ver, budget.delta_ver);
  const auto cap = static_cast<std::size_t>(std::ceil(config.draw_cap_factor * target));
  const CounterStream stream(config.seed);
  bool floor_hit = false;
  const Tally t = run(model, &oracle, stream, target, cap, config, true, &floor_hit);

  Certificate c;
  c.method = kMethodFiltered;
  c.task = task;
  c.oracle = oracle.name();
  c.budget = budget;
  c.classifier = report;
  fill(c, model, stream, t, config);
  c.supported_eps_ver = supported_epsilon(t.accepted, budget.delta_ver);
  c.guarantee = t.accepted >= target;
  if (floor_hit)
    c.note = "NO-GUARANTEE: acceptance rate below floor " + format_real(config.acceptance_floor);
  else if (!c.guarantee)
    c.note = "NO-GUARANTEE: draw cap " + std::to_string(cap) + " reached";
  if (!c.guarantee) c.note += "; accepted samples support eps_ver=" + format_real(c.supported_eps_ver);
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

Certificate estimate_fixed_draws(const MarginModel& model, const FeasibilityOracle& oracle,
                                 std::size_t draws, double delta,
                                 const feas::ClassifierReport& report,
                                 const EstimatorConfig& config, const std::string& task) {
  check_config(config);
  if (draws == 0) throw InvalidArgument("estimate_fixed_draws: draws must be positive");
  const auto start = Clock::now();
  const CounterStream stream(config.seed);
  const Tally t = run(model, &oracle, stream, 0, draws, config, false, nullptr);
  Certificate c;
  c.method = kMethodFiltered;
  c.task = task;
  c.oracle = oracle.name();
  c.classifier = report;
  fill(c, model, stream, t, config);
  if (t.accepted == 0 || report.validation_size == 0) {
    c.budget.delta = delta;
    c.budget.e_hat = report.e_hat;
    c.note = "NO-GUARANTEE: no accepted samples";
  } else {
    c.budget = achieved_budget(delta, report.e_hat, report.validation_size, t.accepted);
    c.supported_eps_ver = c.budget.eps_ver;
    c.guarantee = c.budget.epsilon < 1.0;
    if (!c.guarantee) c.note = "NO-GUARANTEE: achieved epsilon is not below 1";
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

Certificate naive_monte_carlo(const MarginModel& model, std::size_t samples, double delta,
                              const EstimatorConfig& config, const std::string& task) {
  check_config(config);
  if (samples == 0) throw InvalidArgument("naive_monte_carlo: samples must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  const auto start = Clock::now();
  const CounterStream stream(config.seed);
  const Tally t = run(model, nullptr, stream, 0, samples, config, false, nullptr);
  Certificate c;
  c.method = kMethodNaive;
  c.task = task;
  c.oracle = "none";
  c.feasibility_semantics = false;
  fill(c, model, stream, t, config);
  c.budget.delta = delta;
  c.budget.delta_ver = delta;
  c.budget.eps_ver = supported_epsilon(t.accepted, delta);
  c.budget.epsilon = c.budget.eps_ver;
  c.supported_eps_ver = c.budget.eps_ver;
  c.guarantee = c.budget.eps_ver < 1.0;
  c.note = "unfiltered: every hidden state in H is treated as feasible";
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

}  // namespace rnnprove::verify
