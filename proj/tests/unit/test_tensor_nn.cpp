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

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/tensor_nn/adam.hpp"
#include "rnnprove/tensor_nn/cells.hpp"
#include "rnnprove/tensor_nn/checkpoint.hpp"
#include "rnnprove/tensor_nn/matrix.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"
#include "rnnprove/tensor_nn/parameters.hpp"
#include "rnnprove/tensor_nn/policy.hpp"
#include "rnnprove/tensor_nn/tape.hpp"

namespace rnnprove::nn {
namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
  Matrix m(r, c);
  for (double& v : m.values()) v = rng.uniform(-scale, scale);
  return m;
}

TEST(Matrix, BatchedKernelsMatchScalarBitwise) {
  Rng rng(1);
  const Matrix w = random_matrix(5, 7, rng);
  const Matrix x = random_matrix(4, 7, rng);
  Matrix y(4, 5, 0.25);
  gemm_nt_accumulate(x, w, y);
  for (std::size_t b = 0; b < 4; ++b) {
    Vector out(5, 0.25);
    matvec_accumulate(w, x.row(b), out);
    for (std::size_t o = 0; o < 5; ++o) EXPECT_EQ(y(b, o), out[o]);
  }
}

TEST(Matrix, ShapeMismatchIsRejected) {
  const Matrix w(3, 4);
  Vector x(5), out(3);
  EXPECT_THROW(matvec_accumulate(w, x, out), DimensionError);
}

TEST(Cells, ScalarReluStep) {
  const VanillaRnnCell cell = make_scalar_rnn(1.0, 1.0, 0.0, Activation::kRelu);
  EXPECT_EQ(rnn_step(cell, Vector{0.0}, Vector{1.0}), Vector{1.0});
  EXPECT_EQ(rnn_step(cell, Vector{2.0}, Vector{-5.0}), Vector{0.0});
}

TEST(Cells, GruOutputStaysInUnitCube) {
  Rng rng(2);
  GruCell cell = make_gru(3, 6, rng);
  for (double& v : cell.candidate.b) v = 5.0;  // push towards saturation
  Vector h(6, 0.0);
  for (int t = 0; t < 200; ++t) {
    const Vector x{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    h = gru_step(cell, h, x);
    for (double v : h) {
      ASSERT_GE(v, -1.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(Cells, BatchedGruMatchesScalar) {
  Rng rng(3);
  const GruCell cell = make_gru(4, 5, rng);
  const Matrix h = random_matrix(6, 5, rng);
  const Matrix x = random_matrix(6, 4, rng);
  Matrix out;
  gru_step_batch(cell, h, x, out);
  for (std::size_t b = 0; b < 6; ++b) {
    const Vector ref = gru_step(cell, h.row(b), x.row(b));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(out(b, i), ref[i]);
  }
}

TEST(Cells, GruInitializationBounds) {
  Rng rng(4);
  const GruCell cell = make_gru(6, 10, rng);
  const double bound = 1.0 / std::sqrt(16.0);
  for (const Matrix* m : {&cell.update.w_x, &cell.reset.w_h, &cell.candidate.w_x})
    for (double v : m->values()) EXPECT_LE(std::fabs(v), bound);
}

// Sum of masked squared TD-style errors over a 3-step BPTT unroll.
struct Unroll {
  std::vector<Matrix> obs;
  std::vector<std::vector<std::size_t>> actions;
  std::vector<std::vector<double>> targets;

  Tape::Var build(Tape& tape, const RecurrentPolicy& p) const {
    const std::size_t batch = obs.front().rows();
    Tape::Var h = tape.constant(Matrix(batch, p.hidden_dim(), 0.0));
    std::vector<Tape::Var> losses;
    for (std::size_t t = 0; t < obs.size(); ++t) {
      h = tape.gru(h, tape.constant(obs[t]), p.gru);
      const Tape::Var q = tape.mlp(h, p.head);
      const Tape::Var picked = tape.gather(q, actions[t]);
      losses.push_back(
          tape.masked_mse(picked, targets[t], std::vector<double>(batch, 1.0), double(batch)));
    }
    return tape.sum(losses);
  }
  double loss(const RecurrentPolicy& p) const {
    Tape tape;
    return tape.value(build(tape, p))(0, 0);
  }
};

TEST(Tape, GradientsMatchFiniteDifferences) {
  Rng rng(5);
  const std::vector<std::size_t> layers{6};
  RecurrentPolicy policy = make_policy(4, 3, layers, 3, rng);
  Unroll u;
  for (int t = 0; t < 3; ++t) {
    u.obs.push_back(random_matrix(5, 4, rng));
    u.actions.push_back({0, 1, 2, 1, 0});
    u.targets.push_back({0.3, -0.2, 0.5, 0.1, -0.4});
  }
  Tape tape;
  const Gradients grads = tape.backward(u.build(tape, policy));
  auto params = parameters(policy);
  std::size_t checked = 0, failures = 0;
  for (std::size_t k = 0; checked < 100; ++k) {
    auto& p = params[k % params.size()];
    const std::size_t i = (k / params.size() * 7 + k) % p.values.size();
    const double analytic = grads.of(p.values)[i];
    const double saved = p.values[i];
    const double step = 1e-6;
    p.values[i] = saved + step;
    const double up = u.loss(policy);
    p.values[i] = saved - step;
    const double down = u.loss(policy);
    p.values[i] = saved;
    const double numeric = (up - down) / (2 * step);
    const double scale = std::max({std::fabs(analytic), std::fabs(numeric), 1e-6});
    if (std::fabs(analytic - numeric) / scale > 1e-4) ++failures;
    ++checked;
  }
  EXPECT_EQ(failures, 0u);
}

TEST(Tape, BackwardConsumesTheTape) {
  Tape tape;
  const Tape::Var x = tape.constant(Matrix(1, 1, 2.0));
  const Tape::Var l = tape.masked_mse(x, {1.0}, {1.0}, 1.0);
  tape.backward(l);
  EXPECT_TRUE(tape.consumed());
  EXPECT_THROW(tape.backward(l), StateError);
}

TEST(Tape, UntouchedParametersReadZero) {
  Rng rng(6);
  const Matrix w = random_matrix(2, 2, rng);
  const Vector b{0.0, 0.0};
  const Matrix unused = random_matrix(3, 3, rng);
  Tape tape;
  const Tape::Var y = tape.affine(tape.constant(Matrix(1, 2, 1.0)), w, b);
  const Gradients g = tape.backward(tape.masked_mse(tape.gather(y, {0}), {0.0}, {1.0}, 1.0));
  for (double v : g.of(unused)) EXPECT_EQ(v, 0.0);
}

TEST(Adam, FirstStepMovesBySignTimesLr) {
  Vector theta{1.0, -1.0};
  std::vector<ParamView> params{{"theta", theta}};
  std::vector<std::vector<double>> grads{{0.5, -2.0}};
  Adam adam;
  adam.update(params, grads, 0.1);
  EXPECT_NEAR(theta[0], 0.9, 1e-7);
  EXPECT_NEAR(theta[1], -0.9, 1e-7);
  EXPECT_EQ(adam.step_index(), 1);
}

TEST(Policy, PolyakExtremes) {
  Rng rng(7);
  const std::vector<std::size_t> layers{4};
  RecurrentPolicy a = make_policy(3, 2, layers, 2, rng);
  const RecurrentPolicy b = make_policy(3, 2, layers, 2, rng);
  RecurrentPolicy copy = a;
  polyak_update(copy, b, 1.0);
  EXPECT_EQ(save_policy_text(copy), save_policy_text(a));
  polyak_update(copy, b, 0.0);
  EXPECT_EQ(save_policy_text(copy), save_policy_text(b));
  EXPECT_THROW(polyak_update(a, b, 1.5), InvalidArgument);
}

TEST(Policy, GreedyTiesGoLow) {
  EXPECT_EQ(greedy_action(std::vector<double>{0.2, 0.7, 0.7}), 1u);
}

TEST(Checkpoint, RoundTripIsBitwise) {
  Rng rng(8);
  const std::vector<std::size_t> layers{5, 5};
  const RecurrentPolicy p = make_policy(4, 3, layers, 4, rng);
  const std::string text = save_policy_text(p);
  const RecurrentPolicy q = load_policy_text(text);
  EXPECT_EQ(save_policy_text(q), text);
  const Vector h{0.1, 0.2, -0.3}, o{1, 0, 0, 1};
  EXPECT_EQ(forward_policy(p, h, o).q_values, forward_policy(q, h, o).q_values);
}

TEST(Checkpoint, MalformedDocumentIsRejected) {
  EXPECT_ANY_THROW(load_policy_text("gru: [1, 2"));
  EXPECT_ANY_THROW(load_policy_text("format: something-else\n"));
}

TEST(Mlp, SkipFinalActivationGivesLogit) {
  Rng rng(9);
  const std::vector<std::size_t> dims{3, 4, 1};
  const Mlp mlp = make_mlp(dims, Activation::kRelu, Activation::kSigmoid, rng);
  const Matrix x = random_matrix(2, 3, rng);
  Matrix prob, logit;
  mlp.forward_batch(x, prob);
  mlp.forward_batch(x, logit, true);
  for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(prob(b, 0), sigmoid(logit(b, 0)));
}

}  // namespace
}  // namespace rnnprove::nn
