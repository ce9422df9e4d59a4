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

#include "rnnprove/feasibility/classifier.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"
#include "rnnprove/common/text_format.hpp"
#include "rnnprove/tensor_nn/adam.hpp"
#include "rnnprove/tensor_nn/checkpoint.hpp"
#include "rnnprove/tensor_nn/parameters.hpp"
#include "rnnprove/tensor_nn/tape.hpp"
#include "rnnprove/verifier/budget.hpp"

namespace rnnprove::feas {
namespace {

constexpr std::size_t kEvalChunk = 4096;

nn::Matrix gather_inputs(const FeasibilityDataset& d, std::span<const std::size_t> rows) {
  nn::Matrix x(rows.size(), d.state_dim + d.hidden_dim);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const FeasiblePair& p = d.rows[rows[k]];
    auto out = x.row(k);
    std::copy(p.state.begin(), p.state.end(), out.begin());
    std::copy(p.hidden.begin(), p.hidden.end(), out.begin() + d.state_dim);
  }
  return x;
}

}  // namespace

double FeasibilityClassifier::probability(std::span<const double> state,
                                          std::span<const double> hidden) const {
  nn::require_dims(state.size() == state_dim && hidden.size() == hidden_dim,
                   "classifier input");
  nn::Vector x(state.begin(), state.end());
  x.insert(x.end(), hidden.begin(), hidden.end());
  return mlp.forward(x)[0];
}

bool FeasibilityClassifier::accept(std::span<const double> state,
                                   std::span<const double> hidden) const {
  return probability(state, hidden) >= threshold;
}

void FeasibilityClassifier::accept_batch(const nn::Matrix& inputs,
                                         std::vector<std::uint8_t>& out) const {
  nn::require_dims(inputs.cols() == state_dim + hidden_dim, "classifier batch input");
  nn::Matrix p;
  mlp.forward_batch(inputs, p);
  out.resize(inputs.rows());
  for (std::size_t b = 0; b < inputs.rows(); ++b) out[b] = p(b, 0) >= threshold;
}

DatasetSplit split_dataset(const FeasibilityDataset& dataset, const ClassifierConfig& config) {
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
    throw InvalidArgument("train_fraction must lie in (0, 1)");
  if (!(config.selection_fraction >= 0.0 && config.selection_fraction < 1.0))
    throw InvalidArgument("selection_fraction must lie in [0, 1)");
  std::vector<std::size_t> order(dataset.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(config.seed, 11));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const auto n_train_all =
      static_cast<std::size_t>(std::floor(config.train_fraction * static_cast<double>(order.size())));
  const auto n_select =
      static_cast<std::size_t>(std::floor(config.selection_fraction * static_cast<double>(n_train_all)));
  DatasetSplit s;
  s.selection.assign(order.begin(), order.begin() + n_select);
  s.train.assign(order.begin() + n_select, order.begin() + n_train_all);
  s.validation.assign(order.begin() + n_train_all, order.end());
  return s;
}

double error_rate(const FeasibilityClassifier& classifier, const FeasibilityDataset& dataset,
                  std::span<const std::size_t> rows) {
  if (rows.empty()) return 0.0;
  std::size_t wrong = 0;
  std::vector<std::uint8_t> accepted;
  for (std::size_t begin = 0; begin < rows.size(); begin += kEvalChunk) {
    const auto chunk = rows.subspan(begin, std::min(kEvalChunk, rows.size() - begin));
    classifier.accept_batch(gather_inputs(dataset, chunk), accepted);
    for (std::size_t k = 0; k < chunk.size(); ++k)
      wrong += static_cast<int>(accepted[k]) != dataset.rows[chunk[k]].label;
  }
  return static_cast<double>(wrong) / static_cast<double>(rows.size());
}

TrainedClassifier train_classifier(const FeasibilityDataset& dataset,
                                   const ClassifierConfig& config, const EpochHook& hook) {
  dataset.validate();
  if (dataset.count(0) == 0 || dataset.count(1) == 0)
    throw InvalidArgument("train_classifier: dataset must contain both labels");
  if (config.batch_size == 0 || config.epochs == 0)
    throw InvalidArgument("train_classifier: batch_size and epochs must be positive");
  TrainedClassifier result;
  result.split = split_dataset(dataset, config);
  if (result.split.train.empty()) throw InvalidArgument("train_classifier: no training rows");
  const auto& selection = result.split.selection.empty() ? result.split.train : result.split.selection;

  Rng init(derive_seed(config.seed, 1));
  std::vector<std::size_t> dims{dataset.state_dim + dataset.hidden_dim};
  dims.insert(dims.end(), config.hidden_layers.begin(), config.hidden_layers.end());
  dims.push_back(1);
  FeasibilityClassifier current{
      nn::make_mlp(dims, nn::Activation::kRelu, nn::Activation::kSigmoid, init),
      config.threshold, dataset.state_dim, dataset.hidden_dim};
  result.classifier = current;
  result.best_selection_error = error_rate(current, dataset, selection);

  nn::Adam adam;
  Rng shuffle(derive_seed(config.seed, 2));
  std::vector<std::size_t> order = result.split.train;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::span<const std::size_t> batch(
          order.data() + begin, std::min(config.batch_size, order.size() - begin));
      std::vector<double> labels(batch.size());
      for (std::size_t k = 0; k < batch.size(); ++k) labels[k] = dataset.rows[batch[k]].label;
      nn::Tape tape;
      auto logits = tape.mlp(tape.constant(gather_inputs(dataset, batch)), current.mlp, true);
      auto loss = tape.bce_with_logits(logits, std::move(labels), static_cast<double>(batch.size()));
      if (!std::isfinite(tape.value(loss)(0, 0)))
        throw TrainingDiverged("classifier loss became non-finite in epoch " + std::to_string(epoch));
      const nn::Gradients grads = tape.backward(loss);
      adam.update(nn::parameters(current.mlp, "clf"), grads, config.lr);
    }
    const double err = error_rate(current, dataset, selection);
    result.selection_error.push_back(err);
    if (hook) hook(epoch, err);
    if (err < result.best_selection_error) {
      result.best_selection_error = err;
      result.best_epoch = epoch + 1;
      result.classifier = current;
    }
  }
  return result;
}

ClassifierReport validate_classifier(const FeasibilityClassifier& classifier,
                                     const FeasibilityDataset& dataset,
                                     std::span<const std::size_t> held_out, double eps_clf,
                                     double delta_clf) {
  ClassifierReport r;
  r.eps_clf = eps_clf;
  r.delta_clf = delta_clf;
  r.required_size = verify::required_samples(eps_clf, delta_clf);
  r.validation_size = held_out.size();
  r.threshold = classifier.threshold;
  if (held_out.size() < r.required_size)
    throw InsufficientValidation("validation set has " + std::to_string(held_out.size()) +
                                     " rows; the bound for eps_clf=" + format_real(eps_clf) +
                                     ", delta_clf=" + format_real(delta_clf) + " requires " +
                                     std::to_string(r.required_size),
                                 r.required_size);
  std::vector<std::uint8_t> accepted;
  for (std::size_t begin = 0; begin < held_out.size(); begin += kEvalChunk) {
    const auto chunk = held_out.subspan(begin, std::min(kEvalChunk, held_out.size() - begin));
    classifier.accept_batch(gather_inputs(dataset, chunk), accepted);
    for (std::size_t k = 0; k < chunk.size(); ++k) {
      const int label = dataset.rows[chunk[k]].label;
      (label ? r.positives : r.negatives) += 1;
      if (label == 1 && !accepted[k]) ++r.false_negatives;
      if (label == 0 && accepted[k]) ++r.false_positives;
    }
  }
  r.e_hat = static_cast<double>(r.false_negatives + r.false_positives) /
            static_cast<double>(held_out.size());
  return r;
}

std::string report_json(const ClassifierReport& r) {
  nlohmann::ordered_json j;
  j["e_hat"] = r.e_hat;
  j["accuracy"] = r.accuracy();
  j["validation_size"] = r.validation_size;
  j["required_size"] = r.required_size;
  j["eps_clf"] = r.eps_clf;
  j["delta_clf"] = r.delta_clf;
  j["threshold"] = r.threshold;
  j["per_class"] = {{"feasible", {{"rows", r.positives}, {"errors", r.false_negatives}}},
                    {"infeasible", {{"rows", r.negatives}, {"errors", r.false_positives}}}};
  return j.dump(2) + "\n";
}

ClassifierReport parse_report_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ClassifierReport r;
    r.e_hat = j.at("e_hat").get<double>();
    r.validation_size = j.at("validation_size").get<std::size_t>();
    r.required_size = j.at("required_size").get<std::size_t>();
    r.eps_clf = j.at("eps_clf").get<double>();
    r.delta_clf = j.at("delta_clf").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.positives = j.at("per_class").at("feasible").at("rows").get<std::size_t>();
    r.false_negatives = j.at("per_class").at("feasible").at("errors").get<std::size_t>();
    r.negatives = j.at("per_class").at("infeasible").at("rows").get<std::size_t>();
    r.false_positives = j.at("per_class").at("infeasible").at("errors").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("classifier report: ") + e.what());
  }
}

std::string save_classifier_text(const FeasibilityClassifier& c, const ClassifierReport& r) {
  YAML::Node doc;
  doc["format"] = "rnnprove-checkpoint";
  doc["version"] = 1;
  doc["kind"] = "feasibility_classifier";
  doc["state_dim"] = c.state_dim;
  doc["hidden_dim"] = c.hidden_dim;
  doc["threshold"] = format_real(c.threshold);
  doc["mlp"] = nn::to_node(c.mlp);
  YAML::Node rep;
  rep["e_hat"] = format_real(r.e_hat);
  rep["validation_size"] = r.validation_size;
  rep["required_size"] = r.required_size;
  rep["eps_clf"] = format_real(r.eps_clf);
  rep["delta_clf"] = format_real(r.delta_clf);
  rep["positives"] = r.positives;
  rep["negatives"] = r.negatives;
  rep["false_negatives"] = r.false_negatives;
  rep["false_positives"] = r.false_positives;
  doc["report"] = rep;
  return nn::emit_document(doc);
}

FeasibilityClassifier load_classifier_text(const std::string& text, ClassifierReport* report) {
  const YAML::Node doc = nn::parse_document(text);
  try {
    if (!doc["kind"] || doc["kind"].as<std::string>() != "feasibility_classifier")
      throw FormatError("classifier: not a feasibility_classifier document");
    FeasibilityClassifier c;
    c.state_dim = doc["state_dim"].as<std::size_t>();
    c.hidden_dim = doc["hidden_dim"].as<std::size_t>();
    c.threshold = parse_real(doc["threshold"].as<std::string>());
    c.mlp = nn::mlp_from_node(doc["mlp"]);
    if (c.mlp.input_dim() != c.state_dim + c.hidden_dim || c.mlp.output_dim() != 1)
      throw FormatError("classifier: network shape disagrees with declared dims");
    if (report) {
      const YAML::Node rep = doc["report"];
      if (!rep) throw FormatError("classifier: missing report section");
      report->e_hat = parse_real(rep["e_hat"].as<std::string>());
      report->validation_size = rep["validation_size"].as<std::size_t>();
      report->required_size = rep["required_size"].as<std::size_t>();
      report->eps_clf = parse_real(rep["eps_clf"].as<std::string>());
      report->delta_clf = parse_real(rep["delta_clf"].as<std::string>());
      report->positives = rep["positives"].as<std::size_t>();
      report->negatives = rep["negatives"].as<std::size_t>();
      report->false_negatives = rep["false_negatives"].as<std::size_t>();
      report->false_positives = rep["false_positives"].as<std::size_t>();
      report->threshold = c.threshold;
    }
    return c;
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("classifier: ") + e.what());
  }
}

}  // namespace rnnprove::feas
