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
#include <stdexcept>
#include <string>

namespace rnnprove {

// Shape or length disagreement between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument outside the documented domain of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation attempted on an object in the wrong lifecycle state, e.g.
// stepping a terminal environment state or reusing a consumed tape.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested (epsilon, delta) cannot be met because the classifier's
// empirical error already consumes the tolerance.
class InfeasibleBudget : public std::domain_error {
 public:
  InfeasibleBudget(const std::string& what, double minimum_epsilon)
      : std::domain_error(what), minimum_epsilon_(minimum_epsilon) {}
  double minimum_epsilon() const { return minimum_epsilon_; }

 private:
  double minimum_epsilon_;
};

// A configured work cap (trajectory count, cell count, draws) was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t depth)
      : std::runtime_error(what), depth_(depth) {}
  std::size_t depth() const { return depth_; }

 private:
  std::size_t depth_;
};

class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite loss during training.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Held-out set smaller than the Hoeffding bound for the claimed
// (epsilon, delta).
class InsufficientValidation : public std::invalid_argument {
 public:
  InsufficientValidation(const std::string& what, std::size_t required)
      : std::invalid_argument(what), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rnnprove
