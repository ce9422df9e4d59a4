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

#include "rnnprove/verifier/certificate.hpp"

#include <cmath>
#include <json.hpp>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::verify {

using nlohmann::ordered_json;

std::string toolkit_version() { return RNNPROVE_VERSION_STRING; }

ExistentialAnswer decide_existential(const Certificate& c) {
  return c.violations > 0 && c.witness ? ExistentialAnswer::kViolation
                                       : ExistentialAnswer::kNoViolationFound;
}

bool hoeffding_satisfied(std::size_t samples, double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0)) return false;
  const long double lhs = 2.0L * static_cast<long double>(samples) *
                          static_cast<long double>(epsilon) * static_cast<long double>(epsilon);
  const long double rhs = std::log(2.0L / static_cast<long double>(delta));
  return lhs >= rhs;
}

std::vector<std::string> validate_certificate(const Certificate& c) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& what) { bad.push_back(c.method + ": " + what); };
  if (c.method == kMethodMarl) {
    if (c.agents.empty()) fail("aggregate without agent certificates");
    double worst = 0.0;
    bool all_guaranteed = true;
    for (std::size_t i = 0; i < c.agents.size(); ++i) {
      for (const auto& e : validate_certificate(c.agents[i]))
        bad.push_back("agent " + std::to_string(i) + ": " + e);
      worst = std::max(worst, c.agents[i].v_tilde);
      all_guaranteed = all_guaranteed && c.agents[i].guarantee;
    }
    if (!c.agents.empty() && c.v_tilde != worst) fail("v_tilde is not the maximum over agents");
    if (c.guarantee && !all_guaranteed) fail("guarantee claimed while an agent has none");
    return bad;
  }
  const double vol = std::ldexp(1.0, static_cast<int>(c.hidden_dim));
  if (c.volume_h != vol) fail("volume_h != 2^n");
  if (!(c.p_hat >= 0.0 && c.p_hat <= 1.0)) fail("p_hat outside [0, 1]");
  if (!(c.v_tilde >= 0.0 && c.v_tilde <= c.volume_h)) fail("v_tilde outside [0, Vol(H)]");
  if (c.v_tilde != c.volume_h * c.p_hat) fail("v_tilde != Vol(H) * p_hat");
  if (c.method != kMethodBaseline) {
    if (c.violations > c.accepted || c.accepted > c.drawn) fail("inconsistent sample counts");
    const double expected =
        c.accepted ? static_cast<double>(c.violations) / static_cast<double>(c.accepted) : 0.0;
    if (c.p_hat != expected) fail("p_hat != violations / accepted");
  }
  if (c.witness) {
    if (c.witness->hidden.size() != c.hidden_dim) fail("witness has the wrong width");
    if (!(c.witness->margin <= 0.0)) fail("witness margin is positive");
  }
  if (!c.guarantee) return bad;

  const ErrorBudget& b = c.budget;
  if (b.e_hat + b.eps_clf + b.eps_ver != b.epsilon) fail("epsilon != e_hat + eps_clf + eps_ver");
  if (b.delta_clf + b.delta_ver != b.delta) fail("delta != delta_clf + delta_ver");
  if (!(b.epsilon > 0.0 && b.epsilon < 1.0)) fail("epsilon outside (0, 1)");
  if (!(b.eps_ver > 0.0 && b.eps_ver < 1.0 && b.delta_ver > 0.0 && b.delta_ver < 1.0))
    fail("estimation components outside (0, 1)");
  if (c.method == kMethodBaseline) return bad;
  if (!hoeffding_satisfied(c.accepted, b.eps_ver, b.delta_ver))
    fail("accepted count " + std::to_string(c.accepted) + " below the bound for eps_ver");
  if (c.feasibility_semantics) {
    if (!(b.eps_clf > 0.0 && b.eps_clf < 1.0 && b.delta_clf > 0.0 && b.delta_clf < 1.0))
      fail("classifier components outside (0, 1)");
    if (b.e_hat < 0.0 || b.e_hat >= 1.0) fail("e_hat outside [0, 1)");
    if (!c.classifier) {
      if (c.oracle == "classifier") fail("classifier oracle without a validation report");
    } else {
      if (c.classifier->e_hat != b.e_hat) fail("budget e_hat differs from the classifier report");
      if (!hoeffding_satisfied(c.classifier->validation_size, b.eps_clf, b.delta_clf))
        fail("validation size below the bound for eps_clf");
    }
  }
  return bad;
}

namespace {

ordered_json budget_json(const ErrorBudget& b) {
  return {{"epsilon", b.epsilon}, {"delta", b.delta},         {"e_hat", b.e_hat},
          {"eps_clf", b.eps_clf}, {"eps_ver", b.eps_ver},     {"delta_clf", b.delta_clf},
          {"delta_ver", b.delta_ver}};
}

ErrorBudget budget_from(const nlohmann::json& j) {
  ErrorBudget b;
  b.epsilon = j.at("epsilon").get<double>();
  b.delta = j.at("delta").get<double>();
  b.e_hat = j.at("e_hat").get<double>();
  b.eps_clf = j.at("eps_clf").get<double>();
  b.eps_ver = j.at("eps_ver").get<double>();
  b.delta_clf = j.at("delta_clf").get<double>();
  b.delta_ver = j.at("delta_ver").get<double>();
  return b;
}

ordered_json to_json(const Certificate& c, bool timing) {
  ordered_json j;
  j["format"] = "rnnprove-certificate";
  j["toolkit_version"] = toolkit_version();
  j["method"] = c.method;
  j["task"] = c.task;
  j["oracle"] = c.oracle;
  j["guarantee"] = c.guarantee;
  j["feasibility_semantics"] = c.feasibility_semantics;
  j["approximate"] = c.approximate;
  if (!c.note.empty()) j["note"] = c.note;
  j["hidden_dim"] = c.hidden_dim;
  j["volume_h"] = c.volume_h;
  j["p_hat"] = c.p_hat;
  j["v_tilde"] = c.v_tilde;
  j["h_normalized"] = c.h_normalized;
  j["accepted"] = c.accepted;
  j["drawn"] = c.drawn;
  j["violations"] = c.violations;
  j["supported_eps_ver"] = c.supported_eps_ver;
  j["budget"] = budget_json(c.budget);
  if (c.classifier) {
    const auto& r = *c.classifier;
    j["classifier"] = {{"e_hat", r.e_hat},
                       {"validation_size", r.validation_size},
                       {"required_size", r.required_size},
                       {"eps_clf", r.eps_clf},
                       {"delta_clf", r.delta_clf},
                       {"threshold", r.threshold}};
  }
  if (c.witness)
    j["witness"] = {{"sample_index", c.witness->sample_index},
                    {"margin", c.witness->margin},
                    {"hidden", c.witness->hidden}};
  if (timing) j["seconds"] = c.seconds;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["config_digest"] = c.config_digest;
  j["checkpoint_digests"] = c.checkpoint_digests;
  if (!c.agents.empty()) {
    j["agents"] = ordered_json::array();
    for (const auto& a : c.agents) j["agents"].push_back(to_json(a, timing));
  }
  return j;
}

Certificate from_json(const nlohmann::json& j) {
  Certificate c;
  c.method = j.at("method").get<std::string>();
  c.task = j.at("task").get<std::string>();
  c.oracle = j.at("oracle").get<std::string>();
  c.guarantee = j.at("guarantee").get<bool>();
  c.feasibility_semantics = j.at("feasibility_semantics").get<bool>();
  c.approximate = j.at("approximate").get<bool>();
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  c.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  c.volume_h = j.at("volume_h").get<double>();
  c.p_hat = j.at("p_hat").get<double>();
  c.v_tilde = j.at("v_tilde").get<double>();
  c.h_normalized = j.at("h_normalized").get<double>();
  c.accepted = j.at("accepted").get<std::size_t>();
  c.drawn = j.at("drawn").get<std::size_t>();
  c.violations = j.at("violations").get<std::size_t>();
  c.supported_eps_ver = j.at("supported_eps_ver").get<double>();
  c.budget = budget_from(j.at("budget"));
  if (j.contains("classifier")) {
    const auto& r = j.at("classifier");
    feas::ClassifierReport rep;
    rep.e_hat = r.at("e_hat").get<double>();
    rep.validation_size = r.at("validation_size").get<std::size_t>();
    rep.required_size = r.at("required_size").get<std::size_t>();
    rep.eps_clf = r.at("eps_clf").get<double>();
    rep.delta_clf = r.at("delta_clf").get<double>();
    rep.threshold = r.at("threshold").get<double>();
    c.classifier = rep;
  }
  if (j.contains("witness")) {
    Witness w;
    w.sample_index = j.at("witness").at("sample_index").get<std::uint64_t>();
    w.margin = j.at("witness").at("margin").get<double>();
    w.hidden = j.at("witness").at("hidden").get<std::vector<double>>();
    c.witness = w;
  }
  if (j.contains("seconds")) c.seconds = j.at("seconds").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.at("workers").get<std::size_t>();
  c.config_digest = j.at("config_digest").get<std::string>();
  c.checkpoint_digests = j.at("checkpoint_digests").get<std::vector<std::string>>();
  if (j.contains("agents"))
    for (const auto& a : j.at("agents")) c.agents.push_back(from_json(a));
  return c;
}

}  // namespace

std::string certificate_json(const Certificate& c, bool include_timing) {
  return to_json(c, include_timing).dump(2) + "\n";
}

Certificate parse_certificate_json(const std::string& text) {
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

}  // namespace rnnprove::verify
