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
#include <string>

namespace rnnprove::verify {

// Hoeffding sample size: ceil(ln(2 / delta) / (2 eps^2)). Both arguments
// must lie in (0, 1).
std::size_t required_samples(double epsilon, double delta);

// Smallest epsilon that `samples` draws support at confidence delta, i.e.
// sqrt(ln(2 / delta) / (2 samples)) rounded up until both required_samples
// and the certificate validator accept it. Returns 1 for zero samples.
double supported_epsilon(std::size_t samples, double delta);

enum class SplitPolicy { kEven };

// Total tolerance eps = e_hat + eps_clf + eps_ver and confidence
// delta = delta_clf + delta_ver.
struct ErrorBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double e_hat = 0.0;
  double eps_clf = 0.0;
  double eps_ver = 0.0;
  double delta_clf = 0.0;
  double delta_ver = 0.0;

  // Throws InvalidArgument naming the first violated identity or range.
  void check() const;
};

// Splits the tolerance left after the classifier's empirical error evenly
// between validation and estimation. Throws InfeasibleBudget when
// epsilon <= e_hat.
ErrorBudget allocate_budget(double epsilon, double delta, double e_hat,
                            SplitPolicy policy = SplitPolicy::kEven);

// Budget whose components are fixed by the sample counts actually used:
// eps_clf from the validation size, eps_ver from the accepted sample count.
// eps_ver is the smallest double for which `accepted` meets the Hoeffding
// bound, and epsilon is their sum with e_hat.
ErrorBudget achieved_budget(double delta, double e_hat, std::size_t validation_size,
                            std::size_t accepted);

}  // namespace rnnprove::verify
