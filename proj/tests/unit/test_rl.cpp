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
#include <set>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/rl/bundle_io.hpp"
#include "rnnprove/rl/config.hpp"
#include "rnnprove/rl/drqn.hpp"
#include "rnnprove/rl/replay_buffer.hpp"
#include "rnnprove/tensor_nn/checkpoint.hpp"

namespace rnnprove::rl {
namespace {

TEST(Config, TaskTable) {
  EXPECT_EQ(task_spec("nav4").gru_hidden, 4u);
  EXPECT_EQ(task_spec("nav8").gru_hidden, 8u);
  EXPECT_EQ(task_spec("nav16").gru_hidden, 12u);
  EXPECT_EQ(task_spec("bp10").gru_hidden, 16u);
  EXPECT_EQ(task_spec("bp20").gru_hidden, 32u);
  EXPECT_EQ(task_spec("bp10").kind, EnvKind::kBoxPushing);
  EXPECT_THROW(task_spec("nav5"), InvalidArgument);
}

TEST(Config, DefaultsAndSchedule) {
  const TrainConfig c = default_train_config("nav4");
  EXPECT_EQ(c.gamma, 0.9);
  EXPECT_EQ(c.lr, 3e-4);
  EXPECT_EQ(c.batch_size, 32u);
  EXPECT_EQ(c.polyak, 0.995);
  EXPECT_EQ(c.epsilon_at(0), 1.0);
  EXPECT_EQ(c.epsilon_at(c.episodes), c.epsilon_end);
  EXPECT_LT(c.epsilon_at(c.episodes / 4), 1.0);
  TrainConfig bad = c;
  bad.gamma = 1.5;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

Episode two_step_episode(env::TerminalCause cause) {
  Episode e;
  e.observations = {{0.0}, {1.0}, {2.0}};
  e.actions = {0, 1};
  e.rewards = {-0.01, 1.0};
  e.hidden_before = {{0.0}, {0.0}};
  e.cause = cause;
  return e;
}

TEST(Drqn, TdTargetsBootstrapExceptOnTerminal) {
  const std::vector<double> next{0.5, 2.0};
  const auto goal = td_targets_from_next(two_step_episode(env::TerminalCause::kGoal), next, 0.9);
  EXPECT_DOUBLE_EQ(goal[0], -0.01 + 0.9 * 0.5);
  EXPECT_DOUBLE_EQ(goal[1], 1.0);
  const auto cut =
      td_targets_from_next(two_step_episode(env::TerminalCause::kTimeout), next, 0.9);
  EXPECT_DOUBLE_EQ(cut[1], 1.0 + 0.9 * 2.0);
}

TEST(ReplayBuffer, EvictsOldestAndSamplesDistinct) {
  ReplayBuffer<int> buf(3);
  for (int i = 0; i < 5; ++i) buf.push(i);
  EXPECT_EQ(buf.size(), 3u);
  EXPECT_EQ(buf.oldest(), 2);
  Rng rng(1);
  const auto idx = buf.sample_indices(3, rng);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 3u);
  EXPECT_THROW(buf.sample_indices(4, rng), InvalidArgument);
  EXPECT_THROW(ReplayBuffer<int>(0), InvalidArgument);
}

TEST(Drqn, EpsilonGreedyExtremes) {
  Rng rng(2);
  const std::vector<double> q{0.1, 0.9, 0.3};
  for (int i = 0; i < 20; ++i) EXPECT_EQ(select_action(q, 0.0, rng), 1u);
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(select_action(q, 1.0, rng));
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Drqn, EpisodeRecordsHiddenBeforeEachDecision) {
  const env::NavEnv nav(env::make_empty_grid(4, 4));
  Rng rng(3);
  TrainConfig c = default_train_config("nav4");
  const PolicyBundle b = make_bundle(env::NavEnv::kObsDim, env::kNavActions, c, rng);
  const Episode e = run_nav_episode(nav, b.online, 0.5, rng);
  ASSERT_GE(e.length(), 1u);
  EXPECT_EQ(e.observations.size(), e.length() + 1);
  EXPECT_EQ(e.hidden_before.front(), nn::Vector(4, 0.0));
  nn::Vector h(4, 0.0);
  for (std::size_t t = 0; t < e.length(); ++t) {
    EXPECT_EQ(e.hidden_before[t], h);
    h = nn::forward_policy(b.online, h, e.observations[t]).h_next;
  }
}

TrainConfig short_config(const std::string& task) {
  TrainConfig c = default_train_config(task);
  c.episodes = 60;
  c.batch_size = 8;
  return c;
}

TEST(Drqn, TrainingIsDeterministic) {
  const env::NavEnv nav(env::generate_grid(4, 4, 1));
  const TrainConfig c = short_config("nav4");
  const TrainResult a = train_drqn(nav, c);
  const TrainResult b = train_drqn(nav, c);
  EXPECT_EQ(nn::save_policy_text(a.agents[0].online), nn::save_policy_text(b.agents[0].online));
  ASSERT_EQ(a.log.size(), 60u);
  EXPECT_TRUE(std::isnan(a.log.front().loss));
  EXPECT_FALSE(std::isnan(a.log.back().loss));
  EXPECT_EQ(training_log_csv(a.log), training_log_csv(b.log));
}

TEST(Drqn, UpdateReducesLossOnFixedBatch) {
  const env::NavEnv nav(env::make_empty_grid(3, 3));
  Rng rng(4);
  TrainConfig c = default_train_config("nav4");
  c.lr = 1e-2;
  c.polyak = 1.0;  // freeze the target so the regression problem is fixed
  PolicyBundle b = make_bundle(env::NavEnv::kObsDim, env::kNavActions, c, rng);
  std::vector<Episode> episodes;
  for (int i = 0; i < 4; ++i) episodes.push_back(run_nav_episode(nav, b.online, 1.0, rng));
  std::vector<const Episode*> batch;
  for (const auto& e : episodes) batch.push_back(&e);
  const double first = drqn_update(b, batch, c);
  double last = first;
  for (int i = 0; i < 50; ++i) last = drqn_update(b, batch, c);
  EXPECT_LT(last, first);
}

TEST(Drqn, BoxPushingTrainsOnePolicyPerAgent) {
  const env::BoxPushingEnv bp(env::make_bp_spec(6, 6));
  TrainConfig c = short_config("bp10");
  c.episodes = 20;
  const TrainResult r = train_ctde_bp(bp, c);
  ASSERT_EQ(r.agents.size(), 2u);
  EXPECT_EQ(r.agents[0].online.hidden_dim(), 16u);
  EXPECT_EQ(r.agents[0].online.num_actions(), env::kBpActions);
}

TEST(BundleIo, RunRoundTripIsBitwise) {
  const env::NavEnv nav(env::generate_grid(4, 4, 1));
  TrainConfig c = short_config("nav4");
  c.episodes = 30;
  TrainedRun run;
  run.task = task_spec("nav4");
  run.config = c;
  run.config_digest = "fnv1a64:00000000000000aa";
  run.grid = nav.grid();
  run.horizon = nav.horizon();
  run.agents = train_drqn(nav, c).agents;
  const std::string text = save_run_text(run);
  const TrainedRun back = load_run_text(text);
  EXPECT_EQ(save_run_text(back), text);
  EXPECT_EQ(back.grid, run.grid);
  EXPECT_EQ(back.config_digest, run.config_digest);
  EXPECT_EQ(back.agents[0].train_steps, run.agents[0].train_steps);
}

TEST(Evaluation, GreedyRolloutsAreCounted) {
  const env::NavEnv nav(env::make_empty_grid(3, 3));
  Rng rng(5);
  const PolicyBundle b =
      make_bundle(env::NavEnv::kObsDim, env::kNavActions, default_train_config("nav4"), rng);
  const EvalSummary s = evaluate_nav(nav, b.online, 5);
  EXPECT_EQ(s.episodes, 5u);
  EXPECT_LE(s.successes, 5u);
}

}  // namespace
}  // namespace rnnprove::rl
