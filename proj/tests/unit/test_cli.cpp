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

#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rnnprove/common/errors.hpp"
#include "run_config.hpp"

namespace rnnprove::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "rnnprove");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(SampleSize, WorkedExample) {
  const Outcome o = run({"sample-size", "--eps", "0.05", "--delta", "0.001", "--e-hat", "0.01"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("eps_clf   0.02\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("eps_ver   0.02\n"), std::string::npos);
  EXPECT_NE(o.out.find("delta_clf 0.0005\n"), std::string::npos);
  EXPECT_NE(o.out.find("M         10368\n"), std::string::npos);
  EXPECT_NE(o.out.find("N         10368\n"), std::string::npos);
}

TEST(SampleSize, InfeasibleBudgetExitsThree) {
  const Outcome o = run({"sample-size", "--eps", "0.005", "--e-hat", "0.01"});
  EXPECT_EQ(o.code, kExitInfeasible);
  EXPECT_NE(o.err.find("error:"), std::string::npos);
}

TEST(SampleSize, EpsilonOneIsAUsageError) {
  EXPECT_EQ(run({"sample-size", "--eps", "1.0"}).code, kExitUsage);
}

TEST(Usage, UnknownSubcommandAndTask) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"train", "--task", "nav5", "--out", "/nonexistent"}).code, kExitUsage);
  EXPECT_EQ(run({"sample-size", "--eps", "abc"}).code, kExitUsage);
}

TEST(Usage, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, kExitOk); }

TEST(Usage, MissingFilesAreReported) {
  const Outcome o = run({"train-classifier", "--dataset", "/no/such.csv", "--out", "/tmp/x"});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("/no/such.csv"), std::string::npos);
}

TEST(PrintConfig, ShowsResolvedDefaults) {
  const Outcome o = run({"train", "--task", "nav8", "--seed", "3", "--print-config"});
  EXPECT_EQ(o.code, kExitOk);
  const RunConfig c = parse_config_text(o.out);
  EXPECT_EQ(c.task, "nav8");
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.train.gru_hidden, 8u);
  EXPECT_EQ(c.train.seed, 3u);
}

TEST(RunConfigText, RoundTripAndDigest) {
  RunConfig c = default_run_config("bp10");
  c.verify.epsilon = 0.07;
  c.eps_clf = 0.015;
  c.classifier.hidden_layers = {32, 16};
  c.sync();
  const std::string text = config_text(c);
  const RunConfig back = parse_config_text(text);
  EXPECT_EQ(config_text(back), text);
  EXPECT_EQ(run_digest(back, {}), run_digest(c, {}));
  const std::vector<std::string> inputs{"fnv1a64:0000000000000001"};
  EXPECT_NE(run_digest(c, inputs), run_digest(c, {}));
  RunConfig other = c;
  other.verify.delta = 0.002;
  EXPECT_NE(run_digest(other, {}), run_digest(c, {}));
}

TEST(RunConfigText, TaskChangeResetsTrainingDefaults) {
  const RunConfig c = parse_config_text("task: nav16\n");
  EXPECT_EQ(c.train.gru_hidden, 12u);
  EXPECT_EQ(c.train.task, "nav16");
}

TEST(RunConfigText, RejectsBadValues) {
  EXPECT_THROW(parse_config_text("task: nav4\nverify:\n  epsilon: 2\n").validate(),
               InvalidArgument);
  EXPECT_ANY_THROW(parse_config_text("task: [unclosed\n"));
}

}  // namespace
}  // namespace rnnprove::cli
