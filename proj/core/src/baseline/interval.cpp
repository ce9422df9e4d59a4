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

#include "rnnprove/baseline/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/verifier/margin.hpp"

namespace rnnprove::baseline {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IntervalVector zeros(std::size_t n) { return IntervalVector(nn::Vector(n, 0.0), nn::Vector(n, 0.0)); }

void require_size(const IntervalVector& v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw DimensionError(std::string(what) + " has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(n));
}

IntervalVector gate(const nn::GateParams& g, const IntervalVector& h, const IntervalVector& x) {
  IntervalVector pre = interval_matvec_accumulate(g.w_x, x, zeros(g.b.size()));
  pre = interval_matvec_accumulate(g.w_h, h, pre);
  return interval_add_bias(pre, g.b);
}

}  // namespace

IntervalVector::IntervalVector(nn::Vector lo, nn::Vector hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  validate();
}

IntervalVector IntervalVector::point(std::span<const double> v) {
  return IntervalVector(nn::Vector(v.begin(), v.end()), nn::Vector(v.begin(), v.end()));
}

IntervalVector IntervalVector::uniform(std::size_t n, double lo, double hi) {
  return IntervalVector(nn::Vector(n, lo), nn::Vector(n, hi));
}

bool IntervalVector::contains(std::span<const double> v) const {
  if (v.size() != size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(lower[i] <= v[i] && v[i] <= upper[i])) return false;
  return true;
}

bool IntervalVector::contains(const IntervalVector& inner) const {
  if (inner.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (inner.lower[i] < lower[i] || inner.upper[i] > upper[i]) return false;
  return true;
}

bool IntervalVector::is_point() const { return lower == upper; }

void IntervalVector::validate() const {
  if (lower.size() != upper.size())
    throw DimensionError("interval bounds have different lengths");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i]))
      throw InvalidArgument("interval component " + std::to_string(i) + " has lower > upper");
}

IntervalVector interval_matvec_accumulate(const nn::Matrix& w, const IntervalVector& x,
                                          const IntervalVector& acc) {
  require_size(x, w.cols(), "interval matvec input");
  require_size(acc, w.rows(), "interval matvec accumulator");
  IntervalVector out = acc;
  for (std::size_t o = 0; o < w.rows(); ++o) {
    const auto wr = w.row(o);
    double lo = out.lower[o];
    double hi = out.upper[o];
    for (std::size_t i = 0; i < wr.size(); ++i) {
      if (wr[i] >= 0.0) {
        lo += wr[i] * x.lower[i];
        hi += wr[i] * x.upper[i];
      } else {
        lo += wr[i] * x.upper[i];
        hi += wr[i] * x.lower[i];
      }
    }
    out.lower[o] = lo;
    out.upper[o] = hi;
  }
  return out;
}

IntervalVector interval_add_bias(const IntervalVector& x, std::span<const double> b) {
  require_size(x, b.size(), "interval bias input");
  IntervalVector out = x;
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.lower[i] += b[i];
    out.upper[i] += b[i];
  }
  return out;
}

IntervalVector interval_activate(nn::Activation a, const IntervalVector& x) {
  IntervalVector out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.lower[i] = nn::activate(a, x.lower[i]);
    out.upper[i] = nn::activate(a, x.upper[i]);
  }
  return out;
}

Interval interval_mul(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

IntervalVector interval_rnn_step(const nn::VanillaRnnCell& cell, const IntervalVector& h,
                                 const IntervalVector& x) {
  cell.validate();
  require_size(x, cell.input_dim(), "rnn step input");
  require_size(h, cell.hidden_dim(), "rnn step hidden");
  IntervalVector pre = interval_matvec_accumulate(cell.w_x, x, zeros(cell.hidden_dim()));
  pre = interval_matvec_accumulate(cell.w_h, h, pre);
  return interval_activate(cell.activation, interval_add_bias(pre, cell.b_h));
}

IntervalVector interval_gru_step(const nn::GruCell& cell, const IntervalVector& h,
                                 const IntervalVector& x) {
  require_size(x, cell.input_dim(), "gru step input");
  require_size(h, cell.hidden_dim(), "gru step hidden");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.lower[i] < -1.0 || h.upper[i] > 1.0)
      throw InvalidArgument("interval_gru_step: hidden box must lie in [-1, 1]^n");
  const std::size_t n = cell.hidden_dim();
  const IntervalVector z = interval_activate(nn::Activation::kSigmoid, gate(cell.update, h, x));
  const IntervalVector r = interval_activate(nn::Activation::kSigmoid, gate(cell.reset, h, x));
  IntervalVector rh = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval p = interval_mul(r.at(i), h.at(i));
    rh.lower[i] = p.lo;
    rh.upper[i] = p.hi;
  }
  const IntervalVector c =
      interval_activate(nn::Activation::kTanh, gate(cell.candidate, rh, x));
  // h' = (1 - z) h + z c has nonnegative weights on h and c and is affine
  // in z, so its extremes sit at the z endpoints with h and c at matching
  // bounds.
  IntervalVector out = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double zl = z.lower[i], zh = z.upper[i];
    double lo = std::min((1.0 - zl) * h.lower[i] + zl * c.lower[i],
                         (1.0 - zh) * h.lower[i] + zh * c.lower[i]);
    double hi = std::max((1.0 - zl) * h.upper[i] + zl * c.upper[i],
                         (1.0 - zh) * h.upper[i] + zh * c.upper[i]);
    // Interior z is not covered by monotone rounding; widen by one ulp.
    if (zl != zh) {
      lo = std::nextafter(lo, -kInf);
      hi = std::nextafter(hi, kInf);
    }
    out.lower[i] = std::clamp(lo, -1.0, 1.0);
    out.upper[i] = std::clamp(hi, -1.0, 1.0);
  }
  return out;
}

IntervalVector interval_mlp(const nn::Mlp& mlp, const IntervalVector& x) {
  require_size(x, mlp.input_dim(), "interval mlp input");
  IntervalVector cur = x;
  for (const auto& layer : mlp.layers) {
    IntervalVector pre = interval_matvec_accumulate(layer.w, cur, zeros(layer.w.rows()));
    cur = interval_activate(layer.activation, interval_add_bias(pre, layer.b));
  }
  return cur;
}

Interval interval_margin(const IntervalVector& q, const env::BehaviorSpec& behavior) {
  if (q.is_point()) {
    const double m = verify::encode_margin(q.lower, behavior);
    return {m, m};
  }
  require_size(q, behavior.num_actions, "interval margin input");
  double allowed_lo = -kInf, allowed_hi = -kInf, forbidden_lo = -kInf, forbidden_hi = -kInf;
  for (std::size_t a = 0; a < q.size(); ++a) {
    bool allowed;
    if (behavior.kind == env::BehaviorSpec::Kind::kRequireAction)
      allowed = a == behavior.required;
    else
      allowed = !std::binary_search(behavior.unsafe.begin(), behavior.unsafe.end(), a);
    if (allowed) {
      allowed_lo = std::max(allowed_lo, q.lower[a]);
      allowed_hi = std::max(allowed_hi, q.upper[a]);
    } else {
      forbidden_lo = std::max(forbidden_lo, q.lower[a]);
      forbidden_hi = std::max(forbidden_hi, q.upper[a]);
    }
  }
  if (allowed_lo == -kInf || forbidden_lo == -kInf)
    throw InvalidArgument("interval_margin: behavior is vacuous");
  Interval m{allowed_lo - forbidden_hi, allowed_hi - forbidden_lo};
  // A tie may resolve to the smallest positive margin.
  if (m.hi >= 0.0) m.hi = std::max(m.hi, std::numeric_limits<double>::denorm_min());
  return m;
}

void RobustnessTask::validate() const {
  if (inputs.empty()) throw InvalidArgument("robustness task needs T >= 1 input boxes");
  std::size_t in = 0, hidden = 0;
  std::visit(
      [&](const auto& cell) {
        cell.validate();
        in = cell.input_dim();
        hidden = cell.hidden_dim();
      },
      this->cell);
  if (h0.size() != hidden) throw DimensionError("robustness task h0 size");
  if (c.size() != hidden) throw DimensionError("robustness task output weights size");
  for (const auto& x : inputs) {
    x.validate();
    require_size(x, in, "robustness task input box");
  }
}

UnrollResult interval_rnn_unroll(const RobustnessTask& task) {
  task.validate();
  UnrollResult result;
  IntervalVector h = IntervalVector::point(task.h0);
  for (const auto& x : task.inputs) {
    h = std::visit(
        [&](const auto& cell) {
          if constexpr (std::is_same_v<std::decay_t<decltype(cell)>, nn::GruCell>)
            return interval_gru_step(cell, h, x);
          else
            return interval_rnn_step(cell, h, x);
        },
        task.cell);
    result.hidden.push_back(h);
  }
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (task.c[i] >= 0.0) {
      lo += task.c[i] * h.lower[i];
      hi += task.c[i] * h.upper[i];
    } else {
      lo += task.c[i] * h.upper[i];
      hi += task.c[i] * h.lower[i];
    }
  }
  result.output = {lo + task.b_y, hi + task.b_y};
  result.robust = result.output.lo > 0.0;
  return result;
}

double concrete_unroll(const RobustnessTask& task, std::span<const nn::Vector> inputs) {
  task.validate();
  if (inputs.size() != task.inputs.size())
    throw DimensionError("concrete_unroll: input sequence length differs from the task");
  nn::Vector h = task.h0;
  for (const auto& x : inputs)
    h = std::visit(
        [&](const auto& cell) {
          if constexpr (std::is_same_v<std::decay_t<decltype(cell)>, nn::GruCell>)
            return nn::gru_step(cell, h, x);
          else
            return nn::rnn_step(cell, h, x);
        },
        task.cell);
  double y = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) y += task.c[i] * h[i];
  return y + task.b_y;
}

}  // namespace rnnprove::baseline
