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

#include "rnnprove/feasibility/negatives.hpp"

#include <algorithm>
#include <cmath>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"

namespace rnnprove::feas {

ProximityIndex::ProximityIndex(const FeasibilityDataset& dataset) {
  for (const auto& r : dataset.rows)
    if (r.label == 1) points_[r.state].push_back(r.hidden);
  for (auto& [state, pts] : points_)
    std::sort(pts.begin(), pts.end(), [](const nn::Vector& a, const nn::Vector& b) {
      return a.empty() ? false : a[0] < b[0];
    });
}

bool ProximityIndex::near(std::span<const double> state, std::span<const double> hidden,
                          double tau) const {
  auto it = points_.find(nn::Vector(state.begin(), state.end()));
  if (it == points_.end()) return false;
  const auto& pts = it->second;
  if (hidden.empty()) return !pts.empty();
  auto lo = std::lower_bound(pts.begin(), pts.end(), hidden[0] - tau,
                             [](const nn::Vector& p, double v) { return p[0] < v; });
  for (; lo != pts.end() && (*lo)[0] <= hidden[0] + tau; ++lo) {
    bool close = true;
    for (std::size_t i = 1; i < hidden.size() && close; ++i)
      close = std::abs((*lo)[i] - hidden[i]) <= tau;
    if (close) return true;
  }
  return false;
}

FeasibilityDataset make_negatives(const FeasibilityDataset& recorded,
                                  const NegativeConfig& config) {
  if (!(config.ratio > 0.0)) throw InvalidArgument("negative ratio must be positive");
  if (!(config.tau >= 0.0)) throw InvalidArgument("tau must be non-negative");
  recorded.validate();
  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < recorded.rows.size(); ++i)
    if (recorded.rows[i].label == 1) positives.push_back(i);
  if (positives.empty()) throw InvalidArgument("make_negatives: no feasible rows");

  const ProximityIndex index(recorded);
  const auto wanted = static_cast<std::size_t>(std::llround(config.ratio * positives.size()));
  const bool can_mismatch = index.state_count() > 1;
  const std::size_t uniform_wanted = can_mismatch ? wanted / 2 : wanted;
  Rng rng(config.seed);
  FeasibilityDataset out = recorded;
  const std::size_t n = recorded.hidden_dim;

  auto draw = [&](PairSource source, std::size_t count) {
    std::size_t made = 0;
    std::size_t tries = 0;
    while (made < count) {
      ++tries;
      if (tries >= 10000 && made * 100 < tries)
        throw ConstructionFailure(
            std::string("make_negatives: more than 99% of ") + source_name(source) +
            " candidates fall within tau of the feasible set; it nearly fills the hidden domain");
      const FeasiblePair& anchor = recorded.rows[positives[rng.below(positives.size())]];
      nn::Vector hidden(n);
      if (source == PairSource::kUniformNegative) {
        for (double& v : hidden) v = rng.uniform(-1.0, 1.0);
      } else {
        const FeasiblePair& other = recorded.rows[positives[rng.below(positives.size())]];
        if (other.state == anchor.state) continue;
        hidden = other.hidden;
      }
      if (index.near(anchor.state, hidden, config.tau)) continue;
      out.rows.push_back({anchor.state, std::move(hidden), 0, source});
      ++made;
    }
  };
  draw(PairSource::kUniformNegative, uniform_wanted);
  draw(PairSource::kMismatched, wanted - uniform_wanted);
  return out;
}

}  // namespace rnnprove::feas
