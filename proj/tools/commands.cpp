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

#include "commands.hpp"

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "rnnprove/baseline/exact_oracle.hpp"
#include "rnnprove/common/digest.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/verifier/budget.hpp"
#include "run_config.hpp"

namespace rnnprove::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string provenance(const std::string& digest, std::uint64_t seed) {
  return "config_digest=" + digest + " seed=" + std::to_string(seed);
}

// Options every pipeline command understands.
struct Common {
  std::string config_file;
  bool print_config = false;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_file, "Run config file; flags override its values")
      ->check(CLI::ExistingFile);
  app->add_flag("--print-config", c.print_config, "Print the resolved config and exit");
  app->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
}

YAML::Node file_node(const Common& c) {
  if (c.config_file.empty()) return YAML::Node(YAML::NodeType::Map);
  try {
    return YAML::Load(read_text_file(c.config_file));
  } catch (const YAML::Exception& e) {
    throw InvalidArgument("config " + c.config_file + ": " + e.what());
  }
}

// Defaults for `task`, then the config file, with the task pinned.
RunConfig resolve(const Common& c, const std::string& task) {
  RunConfig config = default_run_config(task);
  YAML::Node node = file_node(c);
  node["task"] = config.task;
  try {
    apply_node(node, config);
  } catch (const FormatError& e) {
    throw InvalidArgument(e.what());
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (c.workers) config.workers = *c.workers;
  config.sync();
  return config;
}

// Commands that consume a checkpoint inherit its task, seed, layout and
// training config; everything else comes from the file and flags.
RunConfig resolve_for_run(const Common& c, const rl::TrainedRun& run) {
  RunConfig config = resolve(c, run.task.name);
  config.train = run.config;
  config.seed = run.config.seed;
  if (run.grid) config.layout_seed = run.grid->seed;
  config.sync();
  return config;
}

void write_config(const std::string& path, const RunConfig& config, const std::string& digest) {
  write_text_file(path, "# " + provenance(digest, config.seed) + "\n" + config_text(config));
}

env::Cell parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("cell must be x,y: " + text);
  try {
    std::size_t a = 0, b = 0;
    const int x = std::stoi(text.substr(0, comma), &a);
    const int y = std::stoi(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw InvalidArgument("cell must be x,y: " + text);
  }
}

Json certificate_value(const verify::Certificate& c) {
  return Json::parse(verify::certificate_json(c, false));
}

// Certificates carry no timing; wall time goes to a sidecar so equal
// digests keep meaning equal bytes.
void emit_certificates(const std::vector<verify::Certificate>& certs, bool as_set,
                       const std::string& digest, std::uint64_t seed, const std::string& out_path,
                       std::ostream& out) {
  std::string text;
  Json timing;
  timing["config_digest"] = digest;
  if (as_set) {
    Json set;
    set["format"] = "rnnprove-certificate-set";
    set["config_digest"] = digest;
    set["seed"] = seed;
    set["certificates"] = Json::array();
    timing["seconds"] = Json::array();
    for (const auto& c : certs) {
      set["certificates"].push_back(certificate_value(c));
      timing["seconds"].push_back(c.seconds);
    }
    text = set.dump(2) + "\n";
  } else {
    text = verify::certificate_json(certs.front(), false);
    if (text.empty() || text.back() != '\n') text += '\n';
    timing["seconds"] = certs.front().seconds;
  }
  if (out_path.empty()) {
    out << text;
    return;
  }
  write_text_file(out_path, text);
  write_text_file(out_path + ".timing.json", timing.dump(2) + "\n");
}

void stamp(verify::Certificate& c, const std::string& digest, std::uint64_t seed,
           const std::vector<std::string>& inputs) {
  c.config_digest = digest;
  c.seed = seed;
  c.checkpoint_digests = inputs;
  for (auto& a : c.agents) stamp(a, digest, seed, inputs);
}

struct LoadedClassifier {
  feas::FeasibilityClassifier classifier;
  feas::ClassifierReport report;
};

LoadedClassifier load_classifier(const std::string& path) {
  LoadedClassifier l;
  l.classifier = feas::load_classifier_text(read_text_file(path), &l.report);
  return l;
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  Common common;
  std::string task = "nav4";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> layout_seed;
  std::optional<std::size_t> episodes;
  std::string out_dir;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  RunConfig config = resolve(a.common, a.task);
  if (a.seed) config.seed = *a.seed;
  if (a.layout_seed) config.layout_seed = *a.layout_seed;
  if (a.episodes) config.train.episodes = *a.episodes;
  config.sync();
  config.validate();
  if (a.common.print_config) {
    out << config_text(config);
    return kExitOk;
  }
  if (a.out_dir.empty()) throw InvalidArgument("train: --out is required");
  const std::string digest = run_digest(config, {});
  TrainOutput result = train_run(config);
  result.run.config_digest = digest;
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  write_text_file((dir / "checkpoint.yaml").string(), save_run_text(result.run));
  write_text_file((dir / "train_log.csv").string(),
                  "# " + provenance(digest, config.seed) + "\n" + rl::training_log_csv(result.log));
  write_config((dir / "config.yaml").string(), config, digest);
  out << "trained " << config.task << " seed " << config.seed << " episodes "
      << config.train.episodes << " -> " << (dir / "checkpoint.yaml").string() << "\n";
  return kExitOk;
}

// ---- collect -------------------------------------------------------------

struct CollectArgs {
  Common common;
  std::string checkpoint;
  std::size_t agent = 0;
  std::optional<std::size_t> episodes;
  std::string out;
};

int cmd_collect(const CollectArgs& a, std::ostream& out) {
  const rl::TrainedRun run = rl::load_run_file(a.checkpoint);
  RunConfig config = resolve_for_run(a.common, run);
  if (a.episodes) config.collect.episodes = *a.episodes;
  config.validate();
  if (a.common.print_config) {
    out << config_text(config);
    return kExitOk;
  }
  if (a.out.empty()) throw InvalidArgument("collect: --out is required");
  const std::vector<std::string> inputs{file_digest(a.checkpoint)};
  const std::string digest = run_digest(config, inputs);
  const feas::FeasibilityDataset data = collect_dataset(run, config, a.agent);
  write_text_file(a.out, "# " + provenance(digest, config.seed) + " agent=" +
                             std::to_string(a.agent) + "\n" + feas::dataset_csv(data));
  write_config(a.out + ".config.yaml", config, digest);
  out << "collected " << data.rows.size() << " pairs -> " << a.out << "\n";
  return kExitOk;
}

// ---- train-classifier ----------------------------------------------------

struct ClassifierArgs {
  Common common;
  std::string dataset;
  std::string task = "nav4";
  std::string out;
  std::string report;
};

int cmd_train_classifier(const ClassifierArgs& a, std::ostream& out) {
  RunConfig config = resolve(a.common, a.task);
  config.validate();
  if (a.common.print_config) {
    out << config_text(config);
    return kExitOk;
  }
  if (a.dataset.empty() || a.out.empty())
    throw InvalidArgument("train-classifier: --dataset and --out are required");
  if (!std::filesystem::exists(a.dataset))
    throw std::runtime_error("dataset not found: " + a.dataset);
  const std::vector<std::string> inputs{file_digest(a.dataset)};
  const std::string digest = run_digest(config, inputs);
  const feas::FeasibilityDataset data = feas::parse_dataset_csv(read_text_file(a.dataset));
  const ClassifierOutput trained = train_feasibility(data, config);
  const std::string tag = provenance(digest, config.seed);
  write_text_file(a.out, "# " + tag + "\n" +
                             feas::save_classifier_text(trained.classifier, trained.report));
  Json report = Json::parse(feas::report_json(trained.report));
  report["config_digest"] = digest;
  report["seed"] = config.seed;
  report["best_epoch"] = trained.best_epoch;
  write_text_file(a.report.empty() ? a.out + ".report.json" : a.report, report.dump(2) + "\n");
  write_config(a.out + ".config.yaml", config, digest);
  out << "classifier accuracy " << format_real(trained.report.accuracy()) << " on "
      << trained.report.validation_size << " held-out rows -> " << a.out << "\n";
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string checkpoint;
  std::vector<std::string> classifiers;
  std::string cell;
  bool all_states = false;
  std::optional<std::size_t> agent;
  bool naive = false;
  bool marl = false;
  std::optional<std::size_t> samples;
  std::optional<double> eps;
  std::optional<double> delta;
  std::string heatmap;
  std::string out;
};

std::vector<verify::VerificationTask> select_tasks(const rl::TrainedRun& run,
                                                   const std::string& cell, bool all_states,
                                                   std::optional<std::size_t> agent) {
  if (run.grid) {
    if (agent && *agent != 0) throw InvalidArgument("navigation runs have a single agent");
    if (all_states == !cell.empty())
      throw InvalidArgument("navigation queries need exactly one of --cell or --all-states");
    if (all_states) return verify::nav_all_tasks(run);
    return {verify::nav_task(run, parse_cell(cell))};
  }
  if (!cell.empty() || all_states)
    throw InvalidArgument("box pushing queries take --agent, not --cell or --all-states");
  return {verify::bp_task(run, agent.value_or(0))};
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.checkpoint.empty()) throw InvalidArgument("verify: --checkpoint is required");
  const rl::TrainedRun run = rl::load_run_file(a.checkpoint);
  RunConfig config = resolve_for_run(a.common, run);
  if (a.samples) config.verify.samples = *a.samples;
  if (a.eps) config.verify.epsilon = *a.eps;
  if (a.delta) config.verify.delta = *a.delta;
  if (a.naive && a.samples) config.verify.naive_samples = *a.samples;
  config.validate();
  if (a.common.print_config) {
    out << config_text(config);
    return kExitOk;
  }
  if (a.naive && a.marl) throw InvalidArgument("--naive and --marl are exclusive");
  if (!a.heatmap.empty() && !(run.grid && a.all_states))
    throw InvalidArgument("--heatmap needs a navigation run and --all-states");
  std::vector<std::string> inputs{file_digest(a.checkpoint)};
  std::vector<LoadedClassifier> loaded;
  for (const auto& path : a.classifiers) {
    inputs.push_back(file_digest(path));
    loaded.push_back(load_classifier(path));
  }
  const std::string digest = run_digest(config, inputs);

  std::vector<verify::Certificate> certs;
  std::vector<verify::VerificationTask> tasks;
  if (a.marl) {
    if (!a.cell.empty() || a.all_states || a.agent)
      throw InvalidArgument("--marl covers every agent; drop the state query");
    std::vector<feas::FeasibilityClassifier> cls;
    std::vector<feas::ClassifierReport> reports;
    for (const auto& l : loaded) {
      cls.push_back(l.classifier);
      reports.push_back(l.report);
    }
    certs.push_back(verify_bp_marl(run, cls, reports, config));
  } else {
    tasks = select_tasks(run, a.cell, a.all_states, a.agent);
    const LoadedClassifier* l = nullptr;
    if (!a.naive) {
      if (loaded.size() != 1)
        throw InvalidArgument("filtered verification needs exactly one --classifier");
      l = &loaded.front();
    }
    for (const auto& t : tasks)
      certs.push_back(verify_query(t, l ? &l->classifier : nullptr, l ? &l->report : nullptr,
                                   config, a.naive ? VerifyMode::kNaive : VerifyMode::kFiltered));
  }
  for (auto& c : certs) stamp(c, digest, config.seed, inputs);
  emit_certificates(certs, a.all_states, digest, config.seed, a.out, out);
  if (!a.heatmap.empty()) {
    const auto cells = heatmap_cells(run, certs, tasks);
    const std::string tag = provenance(digest, config.seed);
    write_text_file(a.heatmap + ".csv", heatmap_csv(cells, tag));
    write_text_file(a.heatmap + ".pgm", heatmap_pgm(run, cells, tag));
  }
  return kExitOk;
}

// ---- baseline ------------------------------------------------------------

struct BaselineArgs {
  Common common;
  std::string checkpoint;
  std::string oracle = "exact";
  std::string classifier;
  std::string cell;
  bool all_states = false;
  std::optional<std::size_t> agent;
  std::optional<std::size_t> resolution;
  std::string out;
};

int cmd_baseline(const BaselineArgs& a, std::ostream& out) {
  if (a.checkpoint.empty()) throw InvalidArgument("baseline: --checkpoint is required");
  const rl::TrainedRun run = rl::load_run_file(a.checkpoint);
  RunConfig config = resolve_for_run(a.common, run);
  if (a.resolution) config.baseline.resolution = *a.resolution;
  config.validate();
  if (a.common.print_config) {
    out << config_text(config);
    return kExitOk;
  }
  std::vector<std::string> inputs{file_digest(a.checkpoint)};
  if (a.oracle == "classifier") {
    if (a.classifier.empty()) throw InvalidArgument("--oracle classifier needs --classifier");
    inputs.push_back(file_digest(a.classifier));
  } else if (a.oracle != "exact") {
    throw InvalidArgument("unknown oracle: " + a.oracle);
  }
  const std::vector<verify::VerificationTask> tasks =
      select_tasks(run, a.cell, a.all_states, a.agent);
  baseline::VolumeConfig vc;
  vc.resolution = config.baseline.resolution;
  vc.cell_cap = config.baseline.cell_cap;
  vc.workers = config.workers;
  // Refuse before the (possibly long) enumeration when the grid is too fine.
  const std::size_t n = tasks.front().hidden_dim();
  const std::size_t r = vc.resolution ? vc.resolution : baseline::default_resolution(n);
  if (std::pow(double(r), double(n)) > vc.cell_cap)
    throw CapExceeded("baseline: " + std::to_string(r) + "^" + std::to_string(n) +
                          " cells exceed the cap of " + format_real(vc.cell_cap),
                      n);
  const std::string digest = run_digest(config, inputs);

  std::vector<verify::Certificate> certs;
  if (a.oracle == "exact") {
    if (!run.grid) throw InvalidArgument("the exact oracle needs a navigation run");
    const auto start = Clock::now();
    const baseline::ExactHistorySet set = enumerate_run(run, config);
    const auto index = baseline::make_exact_index(set, run.nav_env());
    const double enumeration_seconds = seconds_since(start);
    for (const auto& t : tasks) {
      const baseline::ExactSetOracle oracle(index, t.state_code, config.baseline.exact_tau);
      certs.push_back(baseline::baseline_volume(t, oracle, vc));
      certs.back().seconds += enumeration_seconds / double(tasks.size());
    }
  } else {
    const LoadedClassifier l = load_classifier(a.classifier);
    for (const auto& t : tasks) {
      const verify::ClassifierOracle oracle(l.classifier, t.state_code);
      certs.push_back(baseline::baseline_volume(t, oracle, vc));
    }
  }
  for (auto& c : certs) stamp(c, digest, config.seed, inputs);
  emit_certificates(certs, a.all_states, digest, config.seed, a.out, out);
  return kExitOk;
}

// ---- sample-size ---------------------------------------------------------

struct SampleSizeArgs {
  double eps = 0.05;
  double delta = 0.001;
  double e_hat = 0.0;
};

// Shortest round-trip digits in fixed notation down to 1e-4.
std::string human_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
  return std::string(buf, r.ptr);
}

int cmd_sample_size(const SampleSizeArgs& a, std::ostream& out) {
  const verify::ErrorBudget b = verify::allocate_budget(a.eps, a.delta, a.e_hat);
  out << "epsilon   " << human_real(b.epsilon) << "\n"
      << "delta     " << human_real(b.delta) << "\n"
      << "e_hat     " << human_real(b.e_hat) << "\n"
      << "eps_clf   " << human_real(b.eps_clf) << "\n"
      << "eps_ver   " << human_real(b.eps_ver) << "\n"
      << "delta_clf " << human_real(b.delta_clf) << "\n"
      << "delta_ver " << human_real(b.delta_ver) << "\n"
      << "M         " << verify::required_samples(b.eps_clf, b.delta_clf) << "\n"
      << "N         " << verify::required_samples(b.eps_ver, b.delta_ver) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rnnprove: probabilistic safety verification of recurrent policies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", verify::toolkit_version());

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train a recurrent policy and write a checkpoint");
  add_common(t, train.common);
  t->add_option("--task", train.task, "nav4, nav8, nav16, bp10 or bp20");
  t->add_option("--seed", train.seed, "Training seed");
  t->add_option("--layout-seed", train.layout_seed, "Navigation obstacle layout seed");
  t->add_option("--episodes", train.episodes, "Training episodes");
  t->add_option("--out", train.out_dir, "Output directory");

  CollectArgs collect;
  auto* c = app.add_subcommand("collect", "Record (state, hidden state) pairs by replay");
  add_common(c, collect.common);
  c->add_option("--checkpoint", collect.checkpoint, "Trained checkpoint")->required();
  c->add_option("--agent", collect.agent, "Agent whose pairs are recorded");
  c->add_option("--episodes", collect.episodes, "Replay episodes per round");
  c->add_option("--out", collect.out, "Dataset CSV");

  ClassifierArgs classifier;
  auto* k = app.add_subcommand("train-classifier", "Train and validate a feasibility classifier");
  add_common(k, classifier.common);
  k->add_option("--dataset", classifier.dataset, "Dataset CSV from collect");
  k->add_option("--task", classifier.task, "Task whose defaults seed the config");
  k->add_option("--out", classifier.out, "Classifier checkpoint");
  k->add_option("--report", classifier.report, "Report JSON (default <out>.report.json)");

  VerifyArgs verify_args;
  auto* v = app.add_subcommand("verify", "Estimate the violation rate over feasible hidden states");
  add_common(v, verify_args.common);
  v->add_option("--checkpoint", verify_args.checkpoint, "Trained checkpoint");
  v->add_option("--classifier", verify_args.classifiers, "Classifier checkpoint (one per agent)");
  v->add_option("--cell", verify_args.cell, "Navigation cell x,y");
  v->add_flag("--all-states", verify_args.all_states, "Every reachable decision cell");
  v->add_option("--agent", verify_args.agent, "Box pushing agent");
  v->add_flag("--naive", verify_args.naive, "Unfiltered Monte Carlo over all of H");
  v->add_flag("--marl", verify_args.marl, "Max-aggregate over all box pushing agents");
  v->add_option("--samples", verify_args.samples, "Fixed number of draws");
  v->add_option("--eps", verify_args.eps, "Total tolerance epsilon");
  v->add_option("--delta", verify_args.delta, "Total failure probability delta");
  v->add_option("--heatmap", verify_args.heatmap, "Write <prefix>.csv and <prefix>.pgm");
  v->add_option("--out", verify_args.out, "Certificate JSON (default stdout)");

  BaselineArgs base;
  auto* b = app.add_subcommand("baseline", "Interval enumeration of the hidden space");
  add_common(b, base.common);
  b->add_option("--checkpoint", base.checkpoint, "Trained checkpoint");
  b->add_option("--oracle", base.oracle, "exact or classifier")
      ->check(CLI::IsMember({"exact", "classifier"}));
  b->add_option("--classifier", base.classifier, "Classifier checkpoint for --oracle classifier");
  b->add_option("--cell", base.cell, "Navigation cell x,y");
  b->add_flag("--all-states", base.all_states, "Every reachable decision cell");
  b->add_option("--agent", base.agent, "Box pushing agent");
  b->add_option("--resolution", base.resolution, "Cells per hidden dimension")
      ->check(CLI::PositiveNumber);
  b->add_option("--out", base.out, "Certificate JSON (default stdout)");

  SampleSizeArgs sizes;
  auto* s = app.add_subcommand("sample-size", "Print the error budget and sample counts");
  s->add_option("--eps", sizes.eps, "Total tolerance epsilon");
  s->add_option("--delta", sizes.delta, "Total failure probability delta");
  s->add_option("--e-hat", sizes.e_hat, "Empirical classifier error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (t->parsed()) return cmd_train(train, out);
    if (c->parsed()) return cmd_collect(collect, out);
    if (k->parsed()) return cmd_train_classifier(classifier, out);
    if (v->parsed()) return cmd_verify(verify_args, out);
    if (b->parsed()) return cmd_baseline(base, out);
    if (s->parsed()) return cmd_sample_size(sizes, out);
  } catch (const InfeasibleBudget& e) {
    err << "error: " << e.what() << " (smallest feasible epsilon exceeds "
        << format_real(e.minimum_epsilon()) << ")\n";
    return kExitInfeasible;
  } catch (const InsufficientValidation& e) {
    err << "error: " << e.what() << " (" << e.required() << " held-out rows required)\n";
    return kExitInfeasible;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rnnprove::cli
