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

#include "rnnprove/common/errors.hpp"
#include "rnnprove/envs/box_pushing.hpp"
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/envs/nav.hpp"

namespace rnnprove::env {
namespace {

TEST(Grid, GeneratedLayoutHasPathAndObstacleCount) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GridSpec g = generate_grid(8, 8, seed);
    EXPECT_EQ(g.obstacle_count(), nav_obstacle_count(8, 8));
    EXPECT_TRUE(has_path(g));
    EXPECT_FALSE(g.is_obstacle(g.start));
    EXPECT_FALSE(g.is_obstacle(g.goal));
    EXPECT_EQ(g.seed, seed);
  }
  EXPECT_EQ(nav_obstacle_count(4, 4), 3u);
}

TEST(Grid, GenerationIsDeterministic) {
  EXPECT_EQ(generate_grid(16, 16, 7), generate_grid(16, 16, 7));
  EXPECT_NE(generate_grid(16, 16, 7).obstacles, generate_grid(16, 16, 8).obstacles);
}

TEST(Grid, TextRoundTrip) {
  const GridSpec g = generate_grid(8, 8, 3);
  EXPECT_EQ(parse_grid(serialize_grid(g)), g);
  EXPECT_THROW(parse_grid("nonsense"), FormatError);
}

TEST(Grid, BfsDistances) {
  const GridSpec g = make_empty_grid(3, 3);
  const auto d = bfs_distances(g, g.start);
  EXPECT_EQ(d[g.index(g.goal)], 4);
  EXPECT_EQ(d[g.index({1, 1})], 2);
}

TEST(Nav, CollisionTerminatesWithPenalty) {
  const NavEnv nav(make_empty_grid(3, 3));
  const NavState s = nav.reset();
  const NavStep up = nav.step(s, 0);
  EXPECT_EQ(up.state.cause, TerminalCause::kCollision);
  EXPECT_EQ(up.reward, kCollisionReward);
  EXPECT_THROW(nav.step(up.state, 1), StateError);
}

TEST(Nav, GoalAndTimeout) {
  const NavEnv nav(make_empty_grid(2, 2), 3);
  NavStep a = nav.step(nav.reset(), 1);  // right
  EXPECT_EQ(a.reward, kStepReward);
  const NavStep b = nav.step(a.state, 2);  // down onto the goal
  EXPECT_EQ(b.state.cause, TerminalCause::kGoal);
  EXPECT_EQ(b.reward, kGoalReward);

  NavState s = nav.reset();
  s = nav.step(s, 1).state;
  s = nav.step(s, 3).state;
  const NavStep c = nav.step(s, 1);
  EXPECT_EQ(c.state.cause, TerminalCause::kTimeout);
}

TEST(Nav, ObservationIsFourOneHotNeighbours) {
  GridSpec g = make_empty_grid(3, 3);
  g.obstacles[g.index({1, 0})] = 1;
  const NavEnv nav(g);
  const auto o = nav.observe({0, 0});
  ASSERT_EQ(o.size(), NavEnv::kObsDim);
  // up: wall, right: obstacle, down: free, left: wall
  EXPECT_EQ(o[0 * 4 + 3], 1.0);
  EXPECT_EQ(o[1 * 4 + 1], 1.0);
  EXPECT_EQ(o[2 * 4 + 0], 1.0);
  EXPECT_EQ(o[3 * 4 + 3], 1.0);
  double total = 0;
  for (double v : o) total += v;
  EXPECT_EQ(total, 4.0);
}

TEST(Nav, UnsafeActionsAndBehavior) {
  GridSpec g = make_empty_grid(3, 3);
  g.obstacles[g.index({1, 0})] = 1;
  const NavEnv nav(g);
  const NavState s = nav.reset();
  EXPECT_EQ(nav.unsafe_actions(s), (std::vector<std::size_t>{0, 1, 3}));
  const BehaviorSpec b = nav.desired_behavior(s);
  EXPECT_EQ(b.kind, BehaviorSpec::Kind::kAvoidActions);
  EXPECT_EQ(b.unsafe, (std::vector<std::size_t>{0, 1, 3}));
}

TEST(Nav, DecisionCellsExcludeObstaclesAndGoal) {
  const GridSpec g = generate_grid(4, 4, 1);
  const NavEnv nav(g);
  EXPECT_EQ(nav.decision_cells().size(), 16u - g.obstacle_count() - 1u);
  EXPECT_EQ(nav.horizon(), 32);
}

BpState at_push(const BoxPushingEnv& env) { return env.verification_state(); }

TEST(BoxPushing, JointPushReachesGoal) {
  const BoxPushingEnv env(make_bp_spec(10, 10));
  const BpStep s = env.step(at_push(env), {kBpPush, kBpPush});
  EXPECT_EQ(s.state.cause, TerminalCause::kGoal);
  EXPECT_EQ(s.reward, kGoalReward);
  EXPECT_EQ(s.state.box.y, 0);
}

TEST(BoxPushing, SinglePushDoesNotMoveBox) {
  const BoxPushingEnv env(make_bp_spec(10, 10));
  const BpStep s = env.step(at_push(env), {kBpPush, 0});
  EXPECT_FALSE(s.state.terminal());
  EXPECT_EQ(s.state.box, env.spec().box);
}

TEST(BoxPushing, NavigateMacroWalksToPushPosition) {
  const BoxPushingEnv env(make_bp_spec(10, 10));
  const BpStep s = env.step(env.reset(), {kBpNavigateToBox, kBpNavigateToBox});
  EXPECT_EQ(s.state.agents, env.spec().push_positions());
  EXPECT_GT(s.macro_moves[0], 0);
  EXPECT_TRUE(env.front_of_box(s.state, 0));
  EXPECT_TRUE(env.front_of_box(s.state, 1));
}

TEST(BoxPushing, ObservationSeesBoxAndWalls) {
  const BoxPushingEnv env(make_bp_spec(10, 10));
  const auto o = env.observe(at_push(env), 0);
  EXPECT_EQ(o[static_cast<std::size_t>(FrontContent::kBox)], 1.0);
  const auto start = env.observe(env.reset(), 0);
  EXPECT_EQ(start[static_cast<std::size_t>(FrontContent::kEmpty)], 1.0);
}

TEST(BoxPushing, DesiredBehaviorOnlyInFrontOfBox) {
  const BoxPushingEnv env(make_bp_spec(10, 10));
  const BehaviorSpec b = env.desired_behavior(at_push(env), 1);
  EXPECT_EQ(b.kind, BehaviorSpec::Kind::kRequireAction);
  EXPECT_EQ(b.required, kBpPush);
  EXPECT_THROW(env.desired_behavior(env.reset(), 0), InvalidArgument);
}

TEST(BoxPushing, AgentsCannotShareACell) {
  BpSpec spec = make_bp_spec(10, 10);
  spec.starts = {Cell{0, 9}, Cell{2, 9}};
  const BoxPushingEnv env(spec);
  const BpStep s = env.step(env.reset(), {1, 3});  // both step towards (1, 9)
  EXPECT_EQ(s.state.agents, spec.starts);
}

TEST(BoxPushing, InvalidLayoutsAreRejected) {
  EXPECT_THROW(make_bp_spec(3, 3), InvalidArgument);
  BpSpec spec = make_bp_spec(10, 10);
  spec.starts[1] = spec.starts[0];
  EXPECT_THROW(BoxPushingEnv{spec}, InvalidArgument);
}

}  // namespace
}  // namespace rnnprove::env
