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

#include "rnnprove/verifier/budget.hpp"

#include <cmath>
#include <string>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/verifier/certificate.hpp"

namespace rnnprove::verify {
namespace {

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

void require_open_unit(double v, const char* name) {
  if (!open_unit(v)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

// Smallest eps >= start for which `samples` satisfies the Hoeffding bound
// under both the closed-form count and the validator's check.
double tighten(double start, std::size_t samples, double delta) {
  double eps = start;
  for (int i = 0; i < 64; ++i) {
    if (required_samples(eps, delta) <= samples && hoeffding_satisfied(samples, eps, delta))
      return eps;
    eps = std::nextafter(eps, 1.0);
  }
  throw StateError("could not establish a supported epsilon");
}

}  // namespace

std::size_t required_samples(double epsilon, double delta) {
  require_open_unit(epsilon, "epsilon");
  require_open_unit(delta, "delta");
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

double supported_epsilon(std::size_t samples, double delta) {
  require_open_unit(delta, "delta");
  if (samples == 0) return 1.0;
  const double raw = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
  return raw >= 1.0 ? 1.0 : tighten(raw, samples, delta);
}

void ErrorBudget::check() const {
  const struct {
    double v;
    const char* name;
  } parts[] = {{epsilon, "epsilon"}, {delta, "delta"},         {eps_clf, "eps_clf"},
               {eps_ver, "eps_ver"}, {delta_clf, "delta_clf"}, {delta_ver, "delta_ver"}};
  for (const auto& p : parts)
    if (!open_unit(p.v)) throw InvalidArgument(std::string("budget: ") + p.name + " not in (0, 1)");
  if (!(e_hat >= 0.0 && e_hat < 1.0)) throw InvalidArgument("budget: e_hat not in [0, 1)");
  if (e_hat + eps_clf + eps_ver != epsilon)
    throw InvalidArgument("budget: epsilon != e_hat + eps_clf + eps_ver");
  if (delta_clf + delta_ver != delta)
    throw InvalidArgument("budget: delta != delta_clf + delta_ver");
}

ErrorBudget allocate_budget(double epsilon, double delta, double e_hat, SplitPolicy) {
  require_open_unit(epsilon, "epsilon");
  require_open_unit(delta, "delta");
  if (!(e_hat >= 0.0 && e_hat < 1.0)) throw InvalidArgument("e_hat must lie in [0, 1)");
  if (epsilon <= e_hat)
    throw InfeasibleBudget("epsilon " + std::to_string(epsilon) +
                               " does not exceed the classifier error " + std::to_string(e_hat) +
                               "; choose epsilon > e_hat",
                           e_hat);
  ErrorBudget b;
  b.epsilon = epsilon;
  b.delta = delta;
  b.e_hat = e_hat;
  b.eps_clf = (epsilon - e_hat) / 2.0;
  b.eps_ver = b.eps_clf;
  // Absorb any rounding residue into eps_ver so the identity is exact.
  for (int i = 0; i < 8 && e_hat + b.eps_clf + b.eps_ver != epsilon; ++i)
    b.eps_ver = std::nextafter(b.eps_ver, e_hat + b.eps_clf + b.eps_ver < epsilon ? 1.0 : 0.0);
  b.delta_clf = delta / 2.0;
  b.delta_ver = delta - b.delta_clf;
  b.check();
  return b;
}

ErrorBudget achieved_budget(double delta, double e_hat, std::size_t validation_size,
                            std::size_t accepted) {
  require_open_unit(delta, "delta");
  if (validation_size == 0 || accepted == 0)
    throw InvalidArgument("achieved budget needs positive validation and sample counts");
  ErrorBudget b;
  b.delta = delta;
  b.delta_clf = delta / 2.0;
  b.delta_ver = delta - b.delta_clf;
  b.e_hat = e_hat;
  b.eps_clf = supported_epsilon(validation_size, b.delta_clf);
  b.eps_ver = supported_epsilon(accepted, b.delta_ver);
  b.epsilon = e_hat + b.eps_clf + b.eps_ver;
  return b;
}

}  // namespace rnnprove::verify
