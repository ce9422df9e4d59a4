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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rnnprove/feasibility/dataset.hpp"
#include "rnnprove/tensor_nn/mlp.hpp"

namespace rnnprove::feas {

struct ClassifierReport {
  double e_hat = 0.0;
  std::size_t validation_size = 0;
  double eps_clf = 0.0;
  double delta_clf = 0.0;
  std::size_t required_size = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t false_negatives = 0;  // feasible rows rejected
  std::size_t false_positives = 0;  // infeasible rows accepted
  double threshold = 0.5;
  double accuracy() const { return 1.0 - e_hat; }
};

// C(s, h) = sigmoid(MLP([s, h])) >= threshold.
struct FeasibilityClassifier {
  nn::Mlp mlp;
  double threshold = 0.5;
  std::size_t state_dim = 0;
  std::size_t hidden_dim = 0;

  double probability(std::span<const double> state, std::span<const double> hidden) const;
  bool accept(std::span<const double> state, std::span<const double> hidden) const;
  // Rows of `inputs` are [state, hidden]; results match accept() bitwise.
  void accept_batch(const nn::Matrix& inputs, std::vector<std::uint8_t>& out) const;
};

struct ClassifierConfig {
  std::vector<std::size_t> hidden_layers{64, 64};
  double lr = 3e-5;
  std::size_t epochs = 1000;
  std::size_t batch_size = 128;
  // Fraction of rows used for training; the rest is held out for the
  // report and never seen during training or model selection.
  double train_fraction = 0.8;
  // Part of the training rows set aside to pick the best epoch.
  double selection_fraction = 0.1;
  double threshold = 0.5;
  std::uint64_t seed = 5;
};

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> selection;
  std::vector<std::size_t> validation;
};

DatasetSplit split_dataset(const FeasibilityDataset& dataset, const ClassifierConfig& config);

struct TrainedClassifier {
  FeasibilityClassifier classifier;
  DatasetSplit split;
  std::size_t best_epoch = 0;
  double best_selection_error = 1.0;
  std::vector<double> selection_error;  // per epoch
};

using EpochHook = std::function<void(std::size_t epoch, double selection_error)>;

// Binary cross-entropy with Adam; keeps the epoch with the lowest error on
// the selection rows. Throws InvalidArgument for single-label data.
TrainedClassifier train_classifier(const FeasibilityDataset& dataset,
                                   const ClassifierConfig& config, const EpochHook& hook = {});

double error_rate(const FeasibilityClassifier& classifier, const FeasibilityDataset& dataset,
                  std::span<const std::size_t> rows);

// Misclassification rate on held-out rows, refusing to report when there
// are fewer rows than the Hoeffding bound for (eps_clf, delta_clf).
ClassifierReport validate_classifier(const FeasibilityClassifier& classifier,
                                     const FeasibilityDataset& dataset,
                                     std::span<const std::size_t> held_out, double eps_clf,
                                     double delta_clf);

std::string report_json(const ClassifierReport& report);
ClassifierReport parse_report_json(const std::string& text);

// Classifier checkpoint: weights, threshold, dims and its validation report.
std::string save_classifier_text(const FeasibilityClassifier& classifier,
                                 const ClassifierReport& report);
FeasibilityClassifier load_classifier_text(const std::string& text,
                                           ClassifierReport* report = nullptr);

}  // namespace rnnprove::feas
