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
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/feasibility/collect.hpp"
#include "rnnprove/feasibility/dataset.hpp"
#include "rnnprove/feasibility/negatives.hpp"
#include "rnnprove/rl/config.hpp"
#include "rnnprove/rl/drqn.hpp"

namespace rnnprove::feas {
namespace {

using nn::Vector;

// Two states whose feasible hidden states sit in opposite corners.
FeasibilityDataset corner_dataset(std::size_t per_state, std::uint64_t seed) {
  FeasibilityDataset d;
  d.state_dim = 1;
  d.hidden_dim = 2;
  Rng rng(seed);
  for (std::size_t i = 0; i < per_state; ++i) {
    d.rows.push_back({{0.0}, {rng.uniform(0.5, 0.9), rng.uniform(0.5, 0.9)}, 1,
                      PairSource::kRecorded});
    d.rows.push_back({{1.0}, {rng.uniform(-0.9, -0.5), rng.uniform(-0.9, -0.5)}, 1,
                      PairSource::kRecorded});
  }
  return d;
}

TEST(Collector, DeduplicatesWithinQuantum) {
  CollectConfig c;
  c.dedupe_quantum = 1e-6;
  PairCollector col(1, 2, c);
  EXPECT_TRUE(col.add(Vector{0.0}, Vector{0.1, 0.2}));
  EXPECT_FALSE(col.add(Vector{0.0}, Vector{0.1 + 1e-9, 0.2}));
  EXPECT_TRUE(col.add(Vector{0.0}, Vector{0.1 + 1e-3, 0.2}));
  EXPECT_TRUE(col.add(Vector{1.0}, Vector{0.1, 0.2}));
  EXPECT_EQ(col.size(), 3u);
  EXPECT_EQ(col.distinct_states(), 2u);
  EXPECT_THROW(col.add(Vector{0.0, 1.0}, Vector{0.1, 0.2}), DimensionError);
}

TEST(Collector, PerStateCap) {
  CollectConfig c;
  c.per_state_cap = 2;
  PairCollector col(1, 1, c);
  for (int i = 0; i < 5; ++i) col.add(Vector{0.0}, Vector{0.1 * i});
  EXPECT_EQ(col.count_for(Vector{0.0}), 2u);
}

TEST(Collector, NavReplayCoversReachableDecisionCells) {
  const env::NavEnv nav(env::generate_grid(4, 4, 1));
  Rng rng(1);
  const rl::PolicyBundle b = rl::make_bundle(env::NavEnv::kObsDim, env::kNavActions,
                                             rl::default_train_config("nav4"), rng);
  ReplayConfig rc;
  rc.episodes = 400;
  rc.target_pairs = 0;
  const FeasibilityDataset d = collect_nav(nav, b.online, rc);
  std::set<Vector> states;
  for (const auto& row : d.rows) states.insert(row.state);
  const auto dist = env::bfs_distances(nav.grid(), nav.grid().start);
  // Exploratory rollouts from an untrained policy reliably reach the cells
  // near the start; every recorded state is a decision cell.
  std::set<Vector> decision;
  for (const env::Cell& c : nav.decision_cells()) {
    decision.insert(nav.encode_cell(c));
    const int d_c = dist[nav.grid().index(c)];
    if (d_c >= 0 && d_c <= 3) EXPECT_TRUE(states.count(nav.encode_cell(c))) << c.x << "," << c.y;
  }
  for (const Vector& s : states) EXPECT_TRUE(decision.count(s));
  // Replay is a pure function of its config.
  EXPECT_EQ(dataset_csv(collect_nav(nav, b.online, rc)), dataset_csv(d));
}

TEST(Collector, RoundsRepeatUntilTarget) {
  const env::NavEnv nav(env::generate_grid(4, 4, 1));
  Rng rng(2);
  const rl::PolicyBundle b = rl::make_bundle(env::NavEnv::kObsDim, env::kNavActions,
                                             rl::default_train_config("nav4"), rng);
  ReplayConfig rc;
  rc.episodes = 50;
  rc.target_pairs = 300;
  EXPECT_GE(collect_nav(nav, b.online, rc).rows.size(), 300u);
  rc.episodes = 0;
  EXPECT_THROW(collect_nav(nav, b.online, rc), InvalidArgument);
}

TEST(Dataset, CsvRoundTripSkipsProvenanceLines) {
  const FeasibilityDataset d = make_negatives(corner_dataset(20, 3), NegativeConfig{});
  const std::string text = dataset_csv(d);
  const FeasibilityDataset back = parse_dataset_csv("# config_digest=x seed=1\n" + text);
  EXPECT_EQ(dataset_csv(back), text);
  for (std::size_t i = 0; i < d.rows.size(); ++i) EXPECT_EQ(row_hash(back.rows[i]), row_hash(d.rows[i]));
  EXPECT_THROW(parse_dataset_csv(""), FormatError);
  EXPECT_THROW(parse_dataset_csv("s0,h0,label,source\n0,0,2,recorded\n"), FormatError);
}

TEST(Negatives, NeverWithinTauOfSameStatePositive) {
  const FeasibilityDataset base = corner_dataset(200, 4);
  NegativeConfig c;
  const FeasibilityDataset d = make_negatives(base, c);
  const ProximityIndex index(base);
  std::size_t uniform = 0, mismatched = 0;
  for (const auto& row : d.rows) {
    if (row.label != 0) continue;
    EXPECT_FALSE(index.near(row.state, row.hidden, c.tau));
    uniform += row.source == PairSource::kUniformNegative;
    mismatched += row.source == PairSource::kMismatched;
  }
  EXPECT_EQ(uniform + mismatched, base.rows.size());
  EXPECT_EQ(uniform, mismatched);
}

TEST(Negatives, DenseFeasibleSetIsAConstructionFailure) {
  FeasibilityDataset d;
  d.state_dim = 1;
  d.hidden_dim = 1;
  for (int i = 0; i <= 40; ++i) d.rows.push_back({{0.0}, {-1.0 + 0.05 * i}, 1, PairSource::kRecorded});
  EXPECT_THROW(make_negatives(d, NegativeConfig{}), ConstructionFailure);
}

ClassifierConfig quick_config() {
  ClassifierConfig c;
  c.hidden_layers = {16, 16};
  c.lr = 3e-3;
  c.epochs = 40;
  c.batch_size = 32;
  return c;
}

TEST(Classifier, SplitIsDisjointAndCovering) {
  const FeasibilityDataset d = make_negatives(corner_dataset(100, 5), NegativeConfig{});
  const DatasetSplit s = split_dataset(d, ClassifierConfig{});
  std::set<std::size_t> all;
  for (auto* part : {&s.train, &s.selection, &s.validation}) all.insert(part->begin(), part->end());
  EXPECT_EQ(all.size(), d.rows.size());
  EXPECT_EQ(s.train.size() + s.selection.size() + s.validation.size(), d.rows.size());
  EXPECT_EQ(s.validation.size(), d.rows.size() - std::size_t(std::llround(0.8 * d.rows.size())));
}

TEST(Classifier, LearnsStateConditionedRegions) {
  const FeasibilityDataset d = make_negatives(corner_dataset(400, 6), NegativeConfig{});
  const TrainedClassifier t = train_classifier(d, quick_config());
  EXPECT_LT(error_rate(t.classifier, d, t.split.validation), 0.05);
  EXPECT_TRUE(t.classifier.accept(Vector{0.0}, Vector{0.7, 0.7}));
  EXPECT_FALSE(t.classifier.accept(Vector{1.0}, Vector{0.7, 0.7}));
  nn::Matrix inputs(2, 3);
  inputs(0, 1) = inputs(0, 2) = 0.7;
  inputs(1, 0) = 1.0;
  inputs(1, 1) = inputs(1, 2) = 0.7;
  std::vector<std::uint8_t> out;
  t.classifier.accept_batch(inputs, out);
  EXPECT_EQ(out, (std::vector<std::uint8_t>{1, 0}));
}

TEST(Classifier, TrainingIsDeterministic) {
  const FeasibilityDataset d = make_negatives(corner_dataset(50, 7), NegativeConfig{});
  ClassifierConfig c = quick_config();
  c.epochs = 5;
  const TrainedClassifier a = train_classifier(d, c);
  const TrainedClassifier b = train_classifier(d, c);
  const ClassifierReport r{};
  EXPECT_EQ(save_classifier_text(a.classifier, r), save_classifier_text(b.classifier, r));
}

TEST(Classifier, ValidationSetBelowBoundIsRefused) {
  const FeasibilityDataset d = make_negatives(corner_dataset(100, 8), NegativeConfig{});
  ClassifierConfig c = quick_config();
  c.epochs = 2;
  const TrainedClassifier t = train_classifier(d, c);
  try {
    validate_classifier(t.classifier, d, t.split.validation, 0.02, 5e-4);
    FAIL() << "expected InsufficientValidation";
  } catch (const InsufficientValidation& e) {
    EXPECT_EQ(e.required(), 10368u);
  }
  const ClassifierReport r = validate_classifier(t.classifier, d, t.split.validation, 0.2, 0.1);
  EXPECT_EQ(r.validation_size, t.split.validation.size());
  EXPECT_EQ(r.false_negatives + r.false_positives,
            std::size_t(std::llround(r.e_hat * double(r.validation_size))));
}

TEST(Classifier, CheckpointRoundTrip) {
  const FeasibilityDataset d = make_negatives(corner_dataset(100, 9), NegativeConfig{});
  ClassifierConfig c = quick_config();
  c.epochs = 3;
  const TrainedClassifier t = train_classifier(d, c);
  const ClassifierReport r = validate_classifier(t.classifier, d, t.split.validation, 0.2, 0.1);
  const std::string text = save_classifier_text(t.classifier, r);
  ClassifierReport back_report;
  const FeasibilityClassifier back = load_classifier_text(text, &back_report);
  EXPECT_EQ(save_classifier_text(back, back_report), text);
  EXPECT_EQ(report_json(parse_report_json(report_json(r))), report_json(r));
  EXPECT_THROW(load_classifier_text("format: other\n"), FormatError);
}

TEST(Classifier, SingleLabelDatasetIsRejected) {
  EXPECT_THROW(train_classifier(corner_dataset(10, 1), quick_config()), InvalidArgument);
}

}  // namespace
}  // namespace rnnprove::feas
