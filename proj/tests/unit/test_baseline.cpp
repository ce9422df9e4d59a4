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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rnnprove/baseline/enumeration.hpp"
#include "rnnprove/baseline/exact_oracle.hpp"
#include "rnnprove/baseline/interval.hpp"
#include "rnnprove/baseline/volume.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/envs/nav.hpp"
#include "rnnprove/tensor_nn/policy.hpp"
#include "rnnprove/verifier/margin.hpp"
#include "rnnprove/verifier/tasks.hpp"

namespace rnnprove::baseline {
namespace {

using nn::Vector;

Vector draw_in(const IntervalVector& box, Rng& rng) {
  Vector v(box.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(box.lower[i], box.upper[i]);
  return v;
}

IntervalVector random_box(std::size_t n, double lo, double hi, double max_width, Rng& rng) {
  IntervalVector b = IntervalVector::uniform(n, 0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = rng.uniform(0.0, max_width);
    const double a = rng.uniform(lo, hi - w);
    b.lower[i] = a;
    b.upper[i] = a + w;
  }
  return b;
}

RobustnessTask scalar_example() {
  RobustnessTask t;
  t.cell = nn::make_scalar_rnn(1.0, 1.0, 0.0, nn::Activation::kRelu);
  t.h0 = {0.0};
  t.inputs = {IntervalVector({0.0}, {2.0}), IntervalVector({1.0}, {3.0})};
  t.c = {1.0};
  t.b_y = 0.0;
  return t;
}

TEST(IntervalUnroll, ScalarGoldenExample) {
  const UnrollResult r = interval_rnn_unroll(scalar_example());
  ASSERT_EQ(r.hidden.size(), 2u);
  EXPECT_EQ(r.hidden[0].lower[0], 0.0);
  EXPECT_EQ(r.hidden[0].upper[0], 2.0);
  EXPECT_EQ(r.hidden[1].lower[0], 1.0);
  EXPECT_EQ(r.hidden[1].upper[0], 5.0);
  EXPECT_EQ(r.output.lo, 1.0);
  EXPECT_EQ(r.output.hi, 5.0);
  EXPECT_TRUE(r.robust);
}

TEST(IntervalUnroll, NegativeLowerBoundIsNotRobust) {
  RobustnessTask t = scalar_example();
  t.b_y = -1.5;
  EXPECT_FALSE(interval_rnn_unroll(t).robust);
}

TEST(IntervalUnroll, PointInputsMatchConcretePass) {
  Rng rng(3);
  nn::GruCell cell = nn::make_gru(3, 4, rng);
  RobustnessTask t;
  t.cell = cell;
  t.h0 = {0.1, -0.2, 0.3, 0.0};
  std::vector<Vector> xs;
  for (int s = 0; s < 3; ++s) {
    xs.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    t.inputs.push_back(IntervalVector::point(xs.back()));
  }
  t.c = {0.5, -1.0, 2.0, 0.25};
  t.b_y = 0.1;
  const UnrollResult r = interval_rnn_unroll(t);
  const double y = concrete_unroll(t, xs);
  EXPECT_EQ(r.output.lo, y);
  EXPECT_EQ(r.output.hi, y);
}

TEST(IntervalUnroll, SampledTrajectoriesStayInside) {
  Rng rng(5);
  RobustnessTask t;
  nn::VanillaRnnCell cell;
  cell.w_x = nn::Matrix(3, 2);
  cell.w_h = nn::Matrix(3, 3);
  for (double& v : cell.w_x.values()) v = rng.uniform(-1, 1);
  for (double& v : cell.w_h.values()) v = rng.uniform(-1, 1);
  cell.b_h = {0.1, -0.1, 0.0};
  cell.activation = nn::Activation::kTanh;
  t.cell = cell;
  t.h0 = {0.0, 0.0, 0.0};
  for (int s = 0; s < 4; ++s) t.inputs.push_back(random_box(2, -1.0, 1.0, 0.5, rng));
  t.c = {1.0, -0.5, 0.25};
  const UnrollResult r = interval_rnn_unroll(t);
  for (int k = 0; k < 10000; ++k) {
    std::vector<Vector> xs;
    for (const auto& box : t.inputs) xs.push_back(draw_in(box, rng));
    const double y = concrete_unroll(t, xs);
    ASSERT_TRUE(r.output.contains(y)) << y;
  }
}

TEST(IntervalGru, PointBoxIsExact) {
  Rng rng(7);
  const nn::GruCell cell = nn::make_gru(5, 4, rng);
  const Vector h{0.3, -0.9, 0.1, 0.5};
  const Vector x{1, 0, 0, 1, 0};
  const IntervalVector out =
      interval_gru_step(cell, IntervalVector::point(h), IntervalVector::point(x));
  const Vector concrete = nn::gru_step(cell, h, x);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(out.lower[i], concrete[i]);
    EXPECT_EQ(out.upper[i], concrete[i]);
  }
}

TEST(IntervalGru, SoundOnRandomBoxes) {
  Rng rng(11);
  const nn::GruCell cell = nn::make_gru(3, 4, rng);
  for (int trial = 0; trial < 5; ++trial) {
    const IntervalVector h = random_box(4, -1.0, 1.0, 0.6, rng);
    const IntervalVector x = random_box(3, -1.0, 1.0, 0.6, rng);
    const IntervalVector out = interval_gru_step(cell, h, x);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_GE(out.lower[i], -1.0);
      EXPECT_LE(out.upper[i], 1.0);
    }
    for (int k = 0; k < 10000; ++k) {
      const Vector y = nn::gru_step(cell, draw_in(h, rng), draw_in(x, rng));
      ASSERT_TRUE(out.contains(y));
    }
  }
}

TEST(IntervalGru, WideningInputNeverShrinksOutput) {
  Rng rng(13);
  const nn::GruCell cell = nn::make_gru(3, 4, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const IntervalVector h = random_box(4, -0.8, 0.8, 0.3, rng);
    const IntervalVector inner = random_box(3, -0.8, 0.8, 0.3, rng);
    IntervalVector outer = inner;
    for (std::size_t i = 0; i < 3; ++i) {
      outer.lower[i] -= rng.uniform(0.0, 0.2);
      outer.upper[i] += rng.uniform(0.0, 0.2);
    }
    const IntervalVector a = interval_gru_step(cell, h, inner);
    const IntervalVector b = interval_gru_step(cell, h, outer);
    ASSERT_TRUE(b.contains(a));
  }
}

TEST(IntervalGru, RejectsHiddenBoxOutsideUnitCube) {
  Rng rng(1);
  const nn::GruCell cell = nn::make_gru(2, 2, rng);
  EXPECT_THROW(interval_gru_step(cell, IntervalVector({-1.5, 0.0}, {0.0, 0.0}),
                                 IntervalVector::point(Vector{0.0, 0.0})),
               InvalidArgument);
}

TEST(IntervalMargin, PointBoxMatchesEncodeMargin) {
  const auto behavior = env::BehaviorSpec::avoid({1, 3}, 4);
  const Vector q{0.5, 0.7, -0.2, 0.1};
  const Interval m = interval_margin(IntervalVector::point(q), behavior);
  EXPECT_EQ(m.lo, verify::encode_margin(q, behavior));
  EXPECT_EQ(m.hi, m.lo);
}

TEST(IntervalMargin, EnclosesSampledMargins) {
  Rng rng(17);
  const auto behavior = env::BehaviorSpec::avoid({0, 2}, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const IntervalVector q = random_box(4, -1.0, 1.0, 0.4, rng);
    const Interval m = interval_margin(q, behavior);
    for (int k = 0; k < 1000; ++k) ASSERT_TRUE(m.contains(verify::encode_margin(draw_in(q, rng), behavior)));
  }
}

TEST(Enumeration, TwoByTwoHorizonTwoMatchesHandCount) {
  // Episode horizon 3 so that depth-2 states are still decision points.
  const env::NavEnv nav(env::make_empty_grid(2, 2), 3);
  Rng rng(1);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 3, layers, 4, rng);
  const ExactHistorySet set = exact_history_enumeration(nav, policy, 2);
  // Start; right and down at depth 1; back to the start from each at depth 2.
  // Every other move hits a wall or reaches the goal.
  EXPECT_EQ(set.expanded, 5u);
  EXPECT_LE(set.expanded, 4u + 16u);
  EXPECT_EQ(set.at({0, 0}).size(), 3u);
  EXPECT_EQ(set.at({1, 0}).size(), 1u);
  EXPECT_EQ(set.at({0, 1}).size(), 1u);
  for (const auto& h : set.at({0, 0})) EXPECT_EQ(h.size(), 3u);
  // The depth-2 revisit of the start reproduces the unrolled hidden state.
  const Vector h1 = nn::gru_step(policy.gru, Vector(3, 0.0), nav.observe({0, 0}));
  const Vector h2 = nn::gru_step(policy.gru, h1, nav.observe({1, 0}));
  bool found = false;
  for (const auto& h : set.at({0, 0})) found = found || h == h2;
  EXPECT_TRUE(found);
}

TEST(Enumeration, HorizonZeroIsInitialPair) {
  const env::NavEnv nav(env::make_empty_grid(3, 3), 4);
  Rng rng(2);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 4, layers, 4, rng);
  const ExactHistorySet set = exact_history_enumeration(nav, policy, 0);
  EXPECT_EQ(set.size(), 1u);
  EXPECT_EQ(set.at(nav.grid().start), std::vector<Vector>{Vector(4, 0.0)});
}

TEST(Enumeration, CapNamesBlowUpDepth) {
  const env::NavEnv nav(env::make_empty_grid(4, 4), 10);
  Rng rng(3);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 4, layers, 4, rng);
  EnumerationConfig config;
  config.cap = 50;
  try {
    exact_history_enumeration(nav, policy, 10, config);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_GT(e.depth(), 0u);
    EXPECT_LE(e.depth(), 10u);
  }
}

TEST(Enumeration, DatasetRowsAreExactPositives) {
  const env::NavEnv nav(env::make_empty_grid(2, 2), 3);
  Rng rng(4);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 2, layers, 4, rng);
  const ExactHistorySet set = exact_history_enumeration(nav, policy, 3);
  const feas::FeasibilityDataset d = set.to_dataset(nav);
  EXPECT_EQ(d.rows.size(), set.size());
  for (const auto& row : d.rows) {
    EXPECT_EQ(row.label, 1);
    EXPECT_EQ(row.source, feas::PairSource::kExact);
  }
}

// Q-head that always prefers action 0 by a wide margin.
nn::RecurrentPolicy always_up_policy(std::size_t hidden) {
  Rng rng(9);
  const std::vector<std::size_t> layers{4};
  nn::RecurrentPolicy p = nn::make_policy(env::NavEnv::kObsDim, hidden, layers, 4, rng);
  auto& last = p.head.layers.back();
  last.w.fill(0.0);
  last.b = {1.0, 0.0, 0.0, 0.0};
  return p;
}

verify::VerificationTask task_for(const nn::RecurrentPolicy& policy, env::BehaviorSpec behavior) {
  const env::NavEnv nav(env::make_empty_grid(3, 3));
  verify::VerificationTask t;
  t.policy = &policy;
  t.observation = nav.observe({1, 1});
  t.state_code = nav.encode_cell({1, 1});
  t.behavior = std::move(behavior);
  t.name = "test";
  return t;
}

TEST(BaselineVolume, AlwaysSafePolicyHasNoViolations) {
  const nn::RecurrentPolicy policy = always_up_policy(3);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({2}, 4));
  const verify::PassAllOracle oracle;
  for (std::size_t r : {1u, 3u, 8u}) {
    VolumeConfig c;
    c.resolution = r;
    const VolumeResult v = baseline_volume_raw(task, oracle, c);
    EXPECT_EQ(v.fraction, 0.0);
    EXPECT_EQ(v.violating_cells, 0u);
    EXPECT_EQ(v.cells, r * r * r);
  }
}

TEST(BaselineVolume, AlwaysViolatingPolicyIsFullyViolating) {
  const nn::RecurrentPolicy policy = always_up_policy(2);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({0}, 4));
  const verify::PassAllOracle oracle;
  VolumeConfig c;
  c.resolution = 4;
  EXPECT_EQ(baseline_volume_raw(task, oracle, c).fraction, 1.0);
}

TEST(BaselineVolume, RefinementMovesOnlyIndeterminateMass) {
  Rng rng(21);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 2, layers, 4, rng);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({1}, 4));
  const verify::PassAllOracle oracle;
  for (std::size_t r : {2u, 4u, 8u, 16u}) {
    VolumeConfig coarse, fine;
    coarse.resolution = r;
    fine.resolution = 2 * r;
    const VolumeResult a = baseline_volume_raw(task, oracle, coarse);
    const VolumeResult b = baseline_volume_raw(task, oracle, fine);
    const double indeterminate = double(a.indeterminate_cells) / double(a.cells);
    EXPECT_LE(std::fabs(b.fraction - a.fraction), indeterminate + 1e-12) << "r=" << r;
  }
}

TEST(BaselineVolume, SingleCellIsFlaggedApproximate) {
  Rng rng(23);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 2, layers, 4, rng);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({1}, 4));
  VolumeConfig c;
  c.resolution = 1;
  const verify::Certificate cert = baseline_volume(task, verify::PassAllOracle{}, c);
  EXPECT_EQ(cert.method, verify::kMethodBaseline);
  EXPECT_EQ(cert.drawn, 1u);
  EXPECT_FALSE(cert.guarantee);
  const VolumeResult raw = baseline_volume_raw(task, verify::PassAllOracle{}, c);
  EXPECT_EQ(cert.approximate, raw.approximate());
}

TEST(BaselineVolume, WorkerCountDoesNotChangeResult) {
  Rng rng(25);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 3, layers, 4, rng);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({1, 2}, 4));
  VolumeConfig one, four;
  one.resolution = four.resolution = 10;
  four.workers = 4;
  const VolumeResult a = baseline_volume_raw(task, verify::PassAllOracle{}, one);
  const VolumeResult b = baseline_volume_raw(task, verify::PassAllOracle{}, four);
  EXPECT_EQ(a.fraction, b.fraction);
  EXPECT_EQ(a.violating_cells, b.violating_cells);
  EXPECT_EQ(a.center_resolved, b.center_resolved);
}

TEST(BaselineVolume, CellCapIsATimeout) {
  const nn::RecurrentPolicy policy = always_up_policy(12);
  const auto task = task_for(policy, env::BehaviorSpec::avoid({2}, 4));
  VolumeConfig c;  // default resolution 6 for n = 12: 6^12 > 1e8
  EXPECT_THROW(baseline_volume_raw(task, verify::PassAllOracle{}, c), CapExceeded);
  EXPECT_EQ(default_resolution(4), 16u);
  EXPECT_EQ(default_resolution(8), 6u);
}

TEST(ExactOracle, AcceptsOnlyNearEnumeratedPoints) {
  // Episode horizon 3 so that depth-2 states are still decision points.
  const env::NavEnv nav(env::make_empty_grid(2, 2), 3);
  Rng rng(1);
  const std::vector<std::size_t> layers{8};
  const nn::RecurrentPolicy policy = nn::make_policy(env::NavEnv::kObsDim, 3, layers, 4, rng);
  const ExactHistorySet set = exact_history_enumeration(nav, policy, 2);
  const auto index = make_exact_index(set, nav);
  const ExactSetOracle oracle(index, nav.encode_cell({1, 0}), 0.01);
  const Vector h = set.at({1, 0}).front();
  nn::Matrix q(2, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    q(0, i) = h[i] + 0.005;
    q(1, i) = h[i] + 0.05;
  }
  std::vector<std::uint8_t> out;
  oracle.accept_batch(q, out);
  EXPECT_EQ(out, (std::vector<std::uint8_t>{1, 0}));
}

}  // namespace
}  // namespace rnnprove::baseline
