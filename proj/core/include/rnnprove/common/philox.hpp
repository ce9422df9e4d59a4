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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace rnnprove {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Random stream addressed by (seed, index). Draw i is a pure function of
// the pair, so any partition of indices over workers yields the same values.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed);

  // Fills `out` with uniforms in [lo, hi) for draw `index`.
  void uniform(std::uint64_t index, double lo, double hi,
               std::span<double> out) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  PhiloxKey key_;
};

}  // namespace rnnprove
