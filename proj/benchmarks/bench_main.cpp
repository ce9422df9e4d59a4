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

#include <benchmark/benchmark.h>

#include <vector>

#include "rnnprove/baseline/interval.hpp"
#include "rnnprove/baseline/volume.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/envs/behavior.hpp"
#include "rnnprove/envs/nav.hpp"
#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"
#include "rnnprove/tensor_nn/policy.hpp"
#include "rnnprove/verifier/estimator.hpp"
#include "rnnprove/verifier/oracle.hpp"
#include "rnnprove/verifier/tasks.hpp"

namespace rnnprove {
namespace {

nn::Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  nn::Matrix m(r, c);
  for (double& v : m.values()) v = rng.uniform(-1.0, 1.0);
  return m;
}

void BM_GemmNt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const nn::Matrix x = random_matrix(8192, n, rng);
  const nn::Matrix w = random_matrix(n, n, rng);
  nn::Matrix y(8192, n);
  for (auto _ : state) {
    y.fill(0.0);
    nn::gemm_nt_accumulate(x, w, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_GemmNt)->Arg(4)->Arg(16)->Arg(64);

void BM_GruStepBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const nn::GruCell cell = nn::make_gru(env::NavEnv::kObsDim, n, rng);
  const nn::Matrix h = random_matrix(8192, n, rng);
  const nn::Matrix x = random_matrix(8192, env::NavEnv::kObsDim, rng);
  nn::Matrix out;
  for (auto _ : state) {
    nn::gru_step_batch(cell, h, x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_GruStepBatch)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Arg(32);

void BM_IntervalGruStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const nn::GruCell cell = nn::make_gru(env::NavEnv::kObsDim, n, rng);
  const auto h = baseline::IntervalVector::uniform(n, -0.1, 0.1);
  const nn::Vector obs(env::NavEnv::kObsDim, 0.25);
  const auto x = baseline::IntervalVector::point(obs);
  for (auto _ : state) benchmark::DoNotOptimize(baseline::interval_gru_step(cell, h, x));
}
BENCHMARK(BM_IntervalGruStep)->Arg(4)->Arg(12)->Arg(32);

struct NavQuery {
  nn::RecurrentPolicy policy;
  feas::FeasibilityClassifier classifier;
  verify::VerificationTask task;

  explicit NavQuery(std::size_t n) {
    Rng rng(4);
    const std::vector<std::size_t> layers{64, 64};
    policy = nn::make_policy(env::NavEnv::kObsDim, n, layers, env::kNavActions, rng);
    classifier.state_dim = env::NavEnv::kStateDim;
    classifier.hidden_dim = n;
    const std::vector<std::size_t> dims{env::NavEnv::kStateDim + n, 64, 64, 1};
    classifier.mlp = nn::make_mlp(dims, nn::Activation::kRelu, nn::Activation::kIdentity, rng);
    task.policy = &policy;
    task.observation = nn::Vector(env::NavEnv::kObsDim, 0.0);
    for (std::size_t d = 0; d < 4; ++d) task.observation[d * 4] = 1.0;
    task.state_code = nn::Vector(env::NavEnv::kStateDim, 0.5);
    task.behavior = env::BehaviorSpec::avoid({0, 3}, env::kNavActions);
    task.name = "bench";
  }
};

void BM_EstimateFixedDraws(benchmark::State& state) {
  const NavQuery q(static_cast<std::size_t>(state.range(0)));
  const verify::ClassifierOracle oracle(q.classifier, q.task.state_code);
  feas::ClassifierReport report;
  report.validation_size = 20000;
  report.e_hat = 0.01;
  const verify::PolicyMargin margin = q.task.margin();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        verify::estimate_fixed_draws(margin, oracle, 100000, 0.001, report, {}));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EstimateFixedDraws)->Arg(4)->Arg(12)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BaselineVolume(benchmark::State& state) {
  const NavQuery q(4);
  const verify::ClassifierOracle oracle(q.classifier, q.task.state_code);
  baseline::VolumeConfig config;
  config.resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(baseline::baseline_volume_raw(q.task, oracle, config));
}
BENCHMARK(BM_BaselineVolume)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rnnprove

BENCHMARK_MAIN();
