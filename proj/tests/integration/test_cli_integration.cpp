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

// End-to-end runs of the rnnprove executable on small budgets.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <string>

#include "rnnprove/common/digest.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/envs/grid.hpp"
#include "rnnprove/envs/nav.hpp"
#include "rnnprove/rl/bundle_io.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(RNNPROVE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Small budgets shared by every run; the bounds are relaxed so that a few
// hundred held-out rows suffice.
constexpr const char* kSmallConfig = R"(collect:
  episodes: 300
  target_pairs: 0
classifier:
  hidden_layers: [16, 16]
  lr: 0.003
  epochs: 30
  eps_clf: 0.2
  delta_clf: 0.1
verify:
  naive_samples: 20000
)";

class CliPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("rnnprove_it_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    rnnprove::write_text_file(path("small.yaml"), kSmallConfig);
    train_ = cli("train --task nav4 --episodes 150 --out " + path("run"));
    collect_ = cli("collect --config " + path("small.yaml") + " --checkpoint " +
                   path("run/checkpoint.yaml") + " --out " + path("pairs.csv"));
    classify_ = cli("train-classifier --config " + path("small.yaml") + " --dataset " +
                    path("pairs.csv") + " --out " + path("clf.yaml"));
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }
  static std::string path(const std::string& name) { return (dir_ / name).string(); }

  static fs::path dir_;
  static Result train_, collect_, classify_;
};

fs::path CliPipeline::dir_;
Result CliPipeline::train_, CliPipeline::collect_, CliPipeline::classify_;

TEST_F(CliPipeline, TrainWritesCheckpointLogAndConfig) {
  ASSERT_EQ(train_.code, 0) << train_.out;
  EXPECT_TRUE(fs::exists(path("run/checkpoint.yaml")));
  EXPECT_TRUE(fs::exists(path("run/config.yaml")));
  const std::string log = rnnprove::read_text_file(path("run/train_log.csv"));
  EXPECT_EQ(log.rfind("# config_digest=fnv1a64:", 0), 0u);
  EXPECT_NE(log.find(" seed=1\n"), std::string::npos);
}

TEST_F(CliPipeline, RetrainingReproducesCheckpointDigest) {
  ASSERT_EQ(train_.code, 0);
  const Result again = cli("train --task nav4 --episodes 150 --out " + path("run2"));
  ASSERT_EQ(again.code, 0) << again.out;
  EXPECT_EQ(rnnprove::file_digest(path("run2/checkpoint.yaml")),
            rnnprove::file_digest(path("run/checkpoint.yaml")));
}

TEST_F(CliPipeline, CollectCoversCellsNearTheStart) {
  ASSERT_EQ(collect_.code, 0) << collect_.out;
  const std::string csv = rnnprove::read_text_file(path("pairs.csv"));
  EXPECT_EQ(csv.rfind("# config_digest=", 0), 0u);
  const auto run = rnnprove::rl::load_run_file(path("run/checkpoint.yaml"));
  const rnnprove::env::NavEnv nav = run.nav_env();
  const auto dist = rnnprove::env::bfs_distances(nav.grid(), nav.grid().start);
  // Cells near the start are always reached by the exploratory rollouts.
  for (const auto& c : nav.decision_cells()) {
    const int d = dist[nav.grid().index(c)];
    if (d < 0 || d > 3) continue;
    const auto code = nav.encode_cell(c);
    const std::string prefix = "\n" + rnnprove::format_real(code[0]) + "," +
                               rnnprove::format_real(code[1]) + ",";
    EXPECT_NE(csv.find(prefix), std::string::npos) << c.x << "," << c.y;
  }
  EXPECT_TRUE(fs::exists(path("pairs.csv.config.yaml")));
}

TEST_F(CliPipeline, ClassifierAndReportCarryDigest) {
  ASSERT_EQ(classify_.code, 0) << classify_.out;
  const Json report = Json::parse(rnnprove::read_text_file(path("clf.yaml.report.json")));
  EXPECT_TRUE(report.contains("config_digest"));
  EXPECT_GT(report["validation_size"].get<std::size_t>(), 0u);
}

TEST_F(CliPipeline, ClassifierRefusesSmallValidationAtDefaultBound) {
  ASSERT_EQ(collect_.code, 0);
  const Result r = cli("train-classifier --dataset " + path("pairs.csv") + " --out " +
                       path("strict.yaml") + " --config " + path("strict_cfg.yaml"));
  // Missing config file is a usage error.
  EXPECT_EQ(r.code, 2) << r.out;
  rnnprove::write_text_file(path("strict_cfg.yaml"), "classifier:\n  epochs: 1\n");
  const Result s = cli("train-classifier --dataset " + path("pairs.csv") + " --out " +
                       path("strict.yaml") + " --config " + path("strict_cfg.yaml"));
  EXPECT_EQ(s.code, 3) << s.out;
}

TEST_F(CliPipeline, VerifyCellIsReproducibleAndWorkerInvariant) {
  ASSERT_EQ(classify_.code, 0);
  const auto run = rnnprove::rl::load_run_file(path("run/checkpoint.yaml"));
  const auto cells = run.nav_env().decision_cells();
  const auto cell = cells.front();
  const std::string common = "verify --checkpoint " + path("run/checkpoint.yaml") +
                             " --classifier " + path("clf.yaml") + " --samples 20000 --cell " +
                             std::to_string(cell.x) + "," + std::to_string(cell.y);
  const Result a = cli(common + " --workers 1 --out " + path("c1.json"));
  const Result b = cli(common + " --workers 3 --out " + path("c3.json"));
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(b.code, 0) << b.out;
  const std::string ta = rnnprove::read_text_file(path("c1.json"));
  const Json ja = Json::parse(ta), jb = Json::parse(rnnprove::read_text_file(path("c3.json")));
  EXPECT_EQ(ja["p_hat"], jb["p_hat"]);
  EXPECT_EQ(ja["accepted"], jb["accepted"]);
  EXPECT_EQ(ja["drawn"].get<std::size_t>(), 20000u);
  EXPECT_TRUE(fs::exists(path("c1.json.timing.json")));
  const Result again = cli(common + " --workers 1 --out " + path("c1b.json"));
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(rnnprove::read_text_file(path("c1b.json")), ta);
}

TEST_F(CliPipeline, NaiveVerifyIgnoresFeasibility) {
  ASSERT_EQ(train_.code, 0);
  const auto run = rnnprove::rl::load_run_file(path("run/checkpoint.yaml"));
  const auto cell = run.nav_env().decision_cells().front();
  const Result r = cli("verify --naive --config " + path("small.yaml") + " --checkpoint " +
                       path("run/checkpoint.yaml") + " --cell " + std::to_string(cell.x) + "," +
                       std::to_string(cell.y));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["method"], "naive-monte-carlo");
  EXPECT_EQ(j["drawn"].get<std::size_t>(), 20000u);
  EXPECT_EQ(j["feasibility_semantics"], false);
}

TEST_F(CliPipeline, AllStatesHeatmapHasOneRowPerFreeCell) {
  ASSERT_EQ(classify_.code, 0);
  const Result r = cli("verify --checkpoint " + path("run/checkpoint.yaml") + " --classifier " +
                       path("clf.yaml") + " --samples 5000 --all-states --heatmap " +
                       path("heat") + " --out " + path("all.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto run = rnnprove::rl::load_run_file(path("run/checkpoint.yaml"));
  const std::size_t free_cells = run.nav_env().decision_cells().size();
  std::istringstream csv(rnnprove::read_text_file(path("heat.csv")));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line))
    if (!line.empty() && line[0] != '#' && line.rfind("x,", 0) != 0) ++rows;
  EXPECT_EQ(rows, free_cells);
  const std::string pgm = rnnprove::read_text_file(path("heat.pgm"));
  EXPECT_EQ(pgm.rfind("P2\n#", 0), 0u);
  EXPECT_NE(pgm.find("\n32 32\n255\n"), std::string::npos);
  const Json set = Json::parse(rnnprove::read_text_file(path("all.json")));
  EXPECT_GE(set["certificates"].size(), 1u);
}

TEST_F(CliPipeline, QueryMistakesAreUsageErrors) {
  ASSERT_EQ(classify_.code, 0);
  const std::string base = "verify --checkpoint " + path("run/checkpoint.yaml") +
                           " --classifier " + path("clf.yaml") + " --samples 100";
  EXPECT_EQ(cli(base).code, 2);                              // no state query
  EXPECT_EQ(cli(base + " --cell 9,9").code, 2);              // outside the grid
  EXPECT_EQ(cli(base + " --cell 1 --all-states").code, 2);   // malformed and ambiguous
  EXPECT_EQ(cli(base + " --all-states --marl").code, 2);
}

TEST_F(CliPipeline, BaselineWithExactOracle) {
  // A short episode horizon keeps the exact enumeration small.
  rnnprove::write_text_file(path("short.yaml"), "train:\n  horizon: 8\n");
  const Result t = cli("train --task nav4 --episodes 20 --config " + path("short.yaml") +
                       " --out " + path("short"));
  ASSERT_EQ(t.code, 0) << t.out;
  const auto run = rnnprove::rl::load_run_file(path("short/checkpoint.yaml"));
  ASSERT_EQ(run.horizon, 8);
  const auto cell = run.nav_env().grid().start;
  const Result r = cli("baseline --oracle exact --resolution 4 --checkpoint " +
                       path("short/checkpoint.yaml") + " --cell " + std::to_string(cell.x) +
                       "," + std::to_string(cell.y));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["method"], "baseline-enumeration");
  EXPECT_EQ(j["drawn"].get<std::size_t>(), 256u);
  EXPECT_EQ(j["guarantee"], false);
}

TEST(CliBaseline, LargeHiddenStateIsDeclaredInfeasible) {
  const fs::path dir = fs::temp_directory_path() / ("rnnprove_n16_" + std::to_string(::getpid()));
  const Result t = cli("train --task nav16 --episodes 3 --out " + dir.string());
  ASSERT_EQ(t.code, 0) << t.out;
  const Result r = cli("baseline --oracle exact --all-states --checkpoint " +
                       (dir / "checkpoint.yaml").string());
  EXPECT_EQ(r.code, 4) << r.out;
  fs::remove_all(dir);
}

TEST(CliMarl, BoxPushingMaxAggregation) {
  const fs::path dir = fs::temp_directory_path() / ("rnnprove_bp_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cfg = (dir / "small.yaml").string();
  rnnprove::write_text_file(cfg, kSmallConfig);
  const Result t = cli("train --task bp10 --episodes 40 --out " + (dir / "run").string());
  ASSERT_EQ(t.code, 0) << t.out;
  const std::string ckpt = (dir / "run/checkpoint.yaml").string();
  std::string classifiers;
  for (int agent = 0; agent < 2; ++agent) {
    const std::string a = std::to_string(agent);
    const std::string csv = (dir / ("pairs" + a + ".csv")).string();
    const std::string clf = (dir / ("clf" + a + ".yaml")).string();
    ASSERT_EQ(cli("collect --config " + cfg + " --checkpoint " + ckpt + " --agent " + a +
                  " --episodes 100 --out " + csv).code, 0);
    const Result c = cli("train-classifier --config " + cfg + " --dataset " + csv + " --out " + clf);
    ASSERT_EQ(c.code, 0) << c.out;
    classifiers += " --classifier " + clf;
  }
  const Result r = cli("verify --marl --samples 20000 --checkpoint " + ckpt + classifiers);
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["agents"].size(), 2u);
  const double p0 = j["agents"][0]["p_hat"], p1 = j["agents"][1]["p_hat"];
  EXPECT_EQ(j["p_hat"].get<double>(), std::max(p0, p1));
  EXPECT_EQ(cli("verify --marl --checkpoint " + ckpt + classifiers).code, 2);  // needs --samples
  fs::remove_all(dir);
}

}  // namespace
