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
#include <deque>
#include <vector>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"

namespace rnnprove::rl {

// FIFO ring of whole episodes.
template <typename EpisodeT>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidArgument("replay buffer capacity must be positive");
  }

  void push(EpisodeT episode) {
    if (items_.size() == capacity_) items_.pop_front();
    items_.push_back(std::move(episode));
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const EpisodeT& at(std::size_t i) const { return items_.at(i); }
  const EpisodeT& oldest() const { return items_.front(); }

  // `count` distinct indices drawn uniformly (partial Fisher-Yates).
  std::vector<std::size_t> sample_indices(std::size_t count, Rng& rng) const {
    if (count > items_.size()) throw InvalidArgument("sample larger than replay buffer");
    std::vector<std::size_t> idx(items_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t k = 0; k < count; ++k) std::swap(idx[k], idx[k + rng.below(idx.size() - k)]);
    idx.resize(count);
    return idx;
  }

 private:
  std::size_t capacity_;
  std::deque<EpisodeT> items_;
};

}  // namespace rnnprove::rl
