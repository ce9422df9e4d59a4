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

#include "rnnprove/common/philox.hpp"

namespace rnnprove {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(PhiloxCounter& c, const PhiloxKey& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    round(counter, key);
  }
  return counter;
}

CounterStream::CounterStream(std::uint64_t seed)
    : seed_(seed),
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

void CounterStream::uniform(std::uint64_t index, double lo, double hi,
                            std::span<double> out) const {
  const double width = hi - lo;
  std::uint32_t block = 0;
  for (std::size_t j = 0; j < out.size(); j += 2, ++block) {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(index),
                            static_cast<std::uint32_t>(index >> 32), block, 0u};
    const PhiloxCounter bits = philox4x32_10(ctr, key_);
    for (std::size_t k = 0; k < 2 && j + k < out.size(); ++k) {
      const std::uint64_t word =
          (static_cast<std::uint64_t>(bits[2 * k]) << 32) | bits[2 * k + 1];
      const double u = static_cast<double>(word >> 11) * 0x1.0p-53;
      out[j + k] = lo + width * u;
    }
  }
}

}  // namespace rnnprove
