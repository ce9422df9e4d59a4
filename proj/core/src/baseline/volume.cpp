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

#include "rnnprove/baseline/volume.hpp"

#include <chrono>
#include <cmath>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/parallel.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::baseline {
namespace {

struct Counts {
  std::size_t feasible = 0;
  std::size_t violating_cells = 0;
  std::size_t indeterminate = 0;
  std::size_t center_resolved = 0;
  std::uint64_t violating_units = 0;  // in sub-cells: one cell = 2^n units
};

// Cell index -> per-axis coordinates, axis 0 fastest.
void cell_box(std::size_t index, std::size_t r, std::size_t n, IntervalVector& box,
              nn::Vector& center) {
  const double w = 2.0 / static_cast<double>(r);
  for (std::size_t d = 0; d < n; ++d) {
    const std::size_t k = index % r;
    index /= r;
    box.lower[d] = -1.0 + w * static_cast<double>(k);
    box.upper[d] = k + 1 == r ? 1.0 : -1.0 + w * static_cast<double>(k + 1);
    center[d] = 0.5 * (box.lower[d] + box.upper[d]);
  }
}

}  // namespace

std::size_t default_resolution(std::size_t hidden_dim) { return hidden_dim <= 4 ? 16 : 6; }

BoxStatus classify_box(const nn::RecurrentPolicy& policy, const IntervalVector& observation,
                       const env::BehaviorSpec& behavior, const IntervalVector& hidden) {
  const IntervalVector next = interval_gru_step(policy.gru, hidden, observation);
  const Interval m = interval_margin(interval_mlp(policy.head, next), behavior);
  if (m.lo > 0.0) return BoxStatus::kSafe;
  if (m.hi <= 0.0) return BoxStatus::kViolating;
  return BoxStatus::kIndeterminate;
}

VolumeResult baseline_volume_raw(const verify::VerificationTask& task,
                                 const verify::FeasibilityOracle& oracle,
                                 const VolumeConfig& config) {
  if (!task.policy) throw InvalidArgument("baseline_volume: task has no policy");
  const std::size_t n = task.hidden_dim();
  const std::size_t r = config.resolution ? config.resolution : default_resolution(n);
  const double cells_real = std::pow(static_cast<double>(r), static_cast<double>(n));
  if (cells_real > config.cell_cap)
    throw CapExceeded("baseline enumeration infeasible: " + std::to_string(r) + "^" +
                          std::to_string(n) + " cells exceed the cap of " +
                          format_real(config.cell_cap),
                      n);
  if (n >= 63) throw CapExceeded("baseline enumeration infeasible: too many sub-cells", n);
  const auto cells = static_cast<std::size_t>(cells_real);
  const std::size_t subs = std::size_t{1} << n;
  const IntervalVector obs = IntervalVector::point(task.observation);
  const verify::PolicyMargin margin = task.margin();

  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (cells + kBlock - 1) / kBlock;
  std::vector<Counts> partial(blocks);
  parallel_for(blocks, config.workers, [&](std::size_t b0, std::size_t b1) {
    IntervalVector box = IntervalVector::uniform(n, 0.0, 0.0);
    IntervalVector sub = box;
    nn::Vector center(n), sub_center(n);
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t first = b * kBlock;
      const std::size_t count = std::min(kBlock, cells - first);
      nn::Matrix centers(count, n);
      for (std::size_t k = 0; k < count; ++k) {
        cell_box(first + k, r, n, box, center);
        std::copy(center.begin(), center.end(), centers.row(k).begin());
      }
      std::vector<std::uint8_t> feasible;
      oracle.accept_batch(centers, feasible);
      Counts& out = partial[b];
      for (std::size_t k = 0; k < count; ++k) {
        if (!feasible[k]) continue;
        ++out.feasible;
        cell_box(first + k, r, n, box, center);
        const BoxStatus s = classify_box(*task.policy, obs, task.behavior, box);
        if (s == BoxStatus::kSafe) continue;
        if (s == BoxStatus::kViolating) {
          ++out.violating_cells;
          out.violating_units += subs;
          continue;
        }
        ++out.indeterminate;
        std::uint64_t units = 0;
        for (std::size_t m = 0; m < subs; ++m) {
          for (std::size_t d = 0; d < n; ++d) {
            const bool upper_half = (m >> d) & 1u;
            sub.lower[d] = upper_half ? center[d] : box.lower[d];
            sub.upper[d] = upper_half ? box.upper[d] : center[d];
            sub_center[d] = 0.5 * (sub.lower[d] + sub.upper[d]);
          }
          const BoxStatus t = classify_box(*task.policy, obs, task.behavior, sub);
          if (t == BoxStatus::kViolating) {
            ++units;
          } else if (t == BoxStatus::kIndeterminate) {
            ++out.center_resolved;
            if (margin.margin(sub_center) <= 0.0) ++units;
          }
        }
        if (units) ++out.violating_cells;
        out.violating_units += units;
      }
    }
  });

  Counts total;
  for (const Counts& c : partial) {
    total.feasible += c.feasible;
    total.violating_cells += c.violating_cells;
    total.indeterminate += c.indeterminate;
    total.center_resolved += c.center_resolved;
    total.violating_units += c.violating_units;
  }
  VolumeResult res;
  res.resolution = r;
  res.cells = cells;
  res.feasible_cells = total.feasible;
  res.violating_cells = total.violating_cells;
  res.indeterminate_cells = total.indeterminate;
  res.center_resolved = total.center_resolved;
  res.fraction = total.feasible ? static_cast<double>(total.violating_units) /
                                      (static_cast<double>(total.feasible) * static_cast<double>(subs))
                                : 0.0;
  return res;
}

verify::Certificate baseline_volume(const verify::VerificationTask& task,
                                    const verify::FeasibilityOracle& oracle,
                                    const VolumeConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const VolumeResult res = baseline_volume_raw(task, oracle, config);
  verify::Certificate c;
  c.method = verify::kMethodBaseline;
  c.task = task.name;
  c.oracle = oracle.name();
  c.hidden_dim = task.hidden_dim();
  c.volume_h = std::ldexp(1.0, static_cast<int>(c.hidden_dim));
  c.p_hat = res.fraction;
  c.v_tilde = c.volume_h * c.p_hat;
  c.drawn = res.cells;
  c.accepted = res.feasible_cells;
  c.violations = res.violating_cells;
  c.h_normalized = res.cells ? c.p_hat * static_cast<double>(res.feasible_cells) /
                                   static_cast<double>(res.cells)
                             : 0.0;
  c.approximate = res.approximate();
  c.workers = config.workers;
  c.note = "interval enumeration at resolution " + std::to_string(res.resolution) + "; " +
           std::to_string(res.indeterminate_cells) + " cells subdivided, " +
           std::to_string(res.center_resolved) + " sub-cells resolved by center";
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

}  // namespace rnnprove::baseline
