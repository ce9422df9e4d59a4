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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnnprove/feasibility/classifier.hpp"
#include "rnnprove/verifier/budget.hpp"

namespace rnnprove::verify {

inline constexpr const char* kMethodFiltered = "rnn-prove";
inline constexpr const char* kMethodNaive = "naive-monte-carlo";
inline constexpr const char* kMethodBaseline = "baseline-enumeration";
inline constexpr const char* kMethodMarl = "rnn-prove-marl";

struct Witness {
  std::vector<double> hidden;
  double margin = 0.0;
  std::uint64_t sample_index = 0;
};

struct Certificate {
  std::string method = kMethodFiltered;
  std::string task;        // human-readable task descriptor
  std::string oracle;      // feasibility oracle name
  std::size_t hidden_dim = 0;
  double volume_h = 0.0;   // Vol(H) = 2^n
  double p_hat = 0.0;      // violating fraction of accepted samples
  double v_tilde = 0.0;    // Vol(H) * p_hat
  std::size_t accepted = 0;
  std::size_t drawn = 0;
  std::size_t violations = 0;
  // Violating fraction of all draws: the H-normalized reading.
  double h_normalized = 0.0;
  bool guarantee = false;
  bool feasibility_semantics = true;  // false for the unfiltered estimator
  bool approximate = false;           // baseline cells resolved by center
  std::string note;                   // why a guarantee is absent, etc.
  // Estimation tolerance the accepted count supports at delta_ver; differs
  // from budget.eps_ver only on NO-GUARANTEE certificates.
  double supported_eps_ver = 0.0;
  ErrorBudget budget;
  std::optional<feas::ClassifierReport> classifier;
  std::optional<Witness> witness;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string config_digest;
  std::vector<std::string> checkpoint_digests;
  std::vector<Certificate> agents;  // MARL sub-certificates

  // Exhibited violation among accepted samples.
  bool has_violation() const { return violations > 0; }
};

enum class ExistentialAnswer { kViolation, kNoViolationFound };

// Sampling-based reading of the existential question: a violation is
// reported only together with a witness; absence of witnesses proves
// nothing.
ExistentialAnswer decide_existential(const Certificate& certificate);

// Independent Hoeffding check in extended precision:
// 2 * samples * eps^2 >= ln(2 / delta).
bool hoeffding_satisfied(std::size_t samples, double epsilon, double delta);

// Re-checks every invariant a certificate must satisfy; returns the list of
// failures (empty when valid).
std::vector<std::string> validate_certificate(const Certificate& certificate);

// Without timing the document is a pure function of inputs and seeds.
std::string certificate_json(const Certificate& certificate, bool include_timing = true);
Certificate parse_certificate_json(const std::string& text);
std::string toolkit_version();

}  // namespace rnnprove::verify
