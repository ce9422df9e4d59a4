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

#include "rnnprove/tensor_nn/tape.hpp"

#include <cmath>
#include <string>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::nn {

std::vector<double> Gradients::of(std::span<const double> param) const {
  auto it = grads_.find(param.data());
  if (it == grads_.end()) return std::vector<double>(param.size(), 0.0);
  return it->second;
}
std::vector<double> Gradients::of(const Matrix& param) const { return of(param.values()); }
std::vector<double> Gradients::of(const Vector& param) const {
  return of(std::span<const double>(param));
}

std::span<double> Gradients::accumulator(std::span<const double> param) {
  auto [it, inserted] = grads_.try_emplace(param.data());
  if (inserted) it->second.assign(param.size(), 0.0);
  return it->second;
}

namespace {

enum class Kind { kConstant, kAffine, kActivation, kGru, kGather, kMse, kBce, kSum };

void add_into(std::span<double> acc, const Matrix& m) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += m.data()[k];
}

void add_column_sums(std::span<double> acc, const Matrix& dy) {
  for (std::size_t b = 0; b < dy.rows(); ++b)
    for (std::size_t o = 0; o < dy.cols(); ++o) acc[o] += dy(b, o);
}

// Accumulates parameter gradients of one gate given d(pre-activation).
void gate_backward(const GateParams& g, const Matrix& dpre, const Matrix& x,
                   const Matrix& h_like, Gradients& grads) {
  Matrix dwx(g.w_x.rows(), g.w_x.cols());
  gemm_tn_accumulate(dpre, x, dwx);
  add_into(grads.accumulator(g.w_x.values()), dwx);
  Matrix dwh(g.w_h.rows(), g.w_h.cols());
  gemm_tn_accumulate(dpre, h_like, dwh);
  add_into(grads.accumulator(g.w_h.values()), dwh);
  add_column_sums(grads.accumulator(g.b), dpre);
}

}  // namespace

struct Tape::Node {
  Kind kind = Kind::kConstant;
  std::vector<std::size_t> inputs;
  Matrix value;
  bool requires_grad = false;
  const Matrix* w = nullptr;
  const Vector* b = nullptr;
  Activation act = Activation::kIdentity;
  const GruCell* cell = nullptr;
  GruCache cache;
  std::vector<std::size_t> columns;
  std::vector<double> target;
  std::vector<double> mask;
  double normalizer = 1.0;
};

Tape::Tape() = default;
Tape::~Tape() = default;
Tape::Tape(Tape&&) noexcept = default;
Tape& Tape::operator=(Tape&&) noexcept = default;

Tape::Var Tape::push(std::unique_ptr<Node> node) {
  if (consumed_) throw StateError("Tape: recording on a consumed tape");
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

const Matrix& Tape::value(Var v) const { return nodes_.at(v.id)->value; }

Tape::Var Tape::constant(Matrix value) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::kConstant;
  n->value = std::move(value);
  return push(std::move(n));
}

Tape::Var Tape::affine(Var x, const Matrix& w, const Vector& b) {
  const Matrix& xv = value(x);
  require_dims(xv.cols() == w.cols() && b.size() == w.rows(), "Tape::affine");
  auto n = std::make_unique<Node>();
  n->kind = Kind::kAffine;
  n->inputs = {x.id};
  n->w = &w;
  n->b = &b;
  n->requires_grad = true;
  n->value = Matrix(xv.rows(), w.rows());
  gemm_nt_accumulate(xv, w, n->value);
  add_row_bias(n->value, b);
  return push(std::move(n));
}

Tape::Var Tape::activation(Var x, Activation a) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::kActivation;
  n->inputs = {x.id};
  n->act = a;
  n->requires_grad = nodes_.at(x.id)->requires_grad;
  n->value = value(x);
  activate_inplace(a, n->value.values());
  return push(std::move(n));
}

Tape::Var Tape::gru(Var h, Var x, const GruCell& cell) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::kGru;
  n->inputs = {h.id, x.id};
  n->cell = &cell;
  n->requires_grad = true;
  gru_step_batch(cell, value(h), value(x), n->value, &n->cache);
  return push(std::move(n));
}

Tape::Var Tape::mlp(Var x, const Mlp& mlp, bool skip_final_activation) {
  Var cur = x;
  for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
    const auto& layer = mlp.layers[l];
    cur = affine(cur, layer.w, layer.b);
    const bool last = l + 1 == mlp.layers.size();
    if (!(last && skip_final_activation) && layer.activation != Activation::kIdentity)
      cur = activation(cur, layer.activation);
  }
  return cur;
}

Tape::Var Tape::gather(Var q, std::vector<std::size_t> columns) {
  const Matrix& qv = value(q);
  require_dims(columns.size() == qv.rows(), "Tape::gather column count");
  auto n = std::make_unique<Node>();
  n->kind = Kind::kGather;
  n->inputs = {q.id};
  n->requires_grad = nodes_.at(q.id)->requires_grad;
  n->value = Matrix(qv.rows(), 1);
  for (std::size_t b = 0; b < qv.rows(); ++b) {
    if (columns[b] >= qv.cols()) throw InvalidArgument("Tape::gather: column out of range");
    n->value(b, 0) = qv(b, columns[b]);
  }
  n->columns = std::move(columns);
  return push(std::move(n));
}

Tape::Var Tape::masked_mse(Var pred, std::vector<double> target,
                           std::vector<double> mask, double normalizer) {
  const Matrix& p = value(pred);
  require_dims(p.cols() == 1 && target.size() == p.rows() && mask.size() == p.rows(),
               "Tape::masked_mse");
  if (!(normalizer > 0.0)) throw InvalidArgument("Tape::masked_mse: normalizer must be > 0");
  auto n = std::make_unique<Node>();
  n->kind = Kind::kMse;
  n->inputs = {pred.id};
  n->requires_grad = nodes_.at(pred.id)->requires_grad;
  double loss = 0.0;
  for (std::size_t b = 0; b < p.rows(); ++b) {
    const double d = p(b, 0) - target[b];
    loss += mask[b] * d * d;
  }
  n->value = Matrix(1, 1, loss / normalizer);
  n->target = std::move(target);
  n->mask = std::move(mask);
  n->normalizer = normalizer;
  return push(std::move(n));
}

Tape::Var Tape::bce_with_logits(Var logit, std::vector<double> labels,
                                double normalizer) {
  const Matrix& l = value(logit);
  require_dims(l.cols() == 1 && labels.size() == l.rows(), "Tape::bce_with_logits");
  if (!(normalizer > 0.0))
    throw InvalidArgument("Tape::bce_with_logits: normalizer must be > 0");
  auto n = std::make_unique<Node>();
  n->kind = Kind::kBce;
  n->inputs = {logit.id};
  n->requires_grad = nodes_.at(logit.id)->requires_grad;
  double loss = 0.0;
  for (std::size_t b = 0; b < l.rows(); ++b) {
    const double x = l(b, 0);
    loss += std::max(x, 0.0) - x * labels[b] + std::log1p(std::exp(-std::abs(x)));
  }
  n->value = Matrix(1, 1, loss / normalizer);
  n->target = std::move(labels);
  n->normalizer = normalizer;
  return push(std::move(n));
}

Tape::Var Tape::sum(std::span<const Var> scalars) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::kSum;
  double total = 0.0;
  for (Var v : scalars) {
    const Matrix& m = value(v);
    require_dims(m.rows() == 1 && m.cols() == 1, "Tape::sum expects 1x1 values");
    total += m(0, 0);
    n->inputs.push_back(v.id);
    n->requires_grad = n->requires_grad || nodes_.at(v.id)->requires_grad;
  }
  n->value = Matrix(1, 1, total);
  return push(std::move(n));
}

Gradients Tape::backward(Var loss, double seed) {
  if (consumed_) throw StateError("Tape::backward: tape already consumed");
  const Matrix& lv = value(loss);
  require_dims(lv.rows() == 1 && lv.cols() == 1, "Tape::backward expects a scalar loss");
  consumed_ = true;

  Gradients grads;
  std::vector<Matrix> g(nodes_.size());
  g[loss.id] = Matrix(1, 1, seed);

  auto grad_of = [&](std::size_t id) -> Matrix* {
    Node& in = *nodes_[id];
    if (!in.requires_grad) return nullptr;
    if (g[id].empty()) g[id] = Matrix(in.value.rows(), in.value.cols());
    return &g[id];
  };

  for (std::size_t id = loss.id + 1; id-- > 0;) {
    if (g[id].empty()) continue;
    Node& n = *nodes_[id];
    const Matrix& dy = g[id];
    switch (n.kind) {
      case Kind::kConstant:
        break;
      case Kind::kAffine: {
        const Matrix& x = nodes_[n.inputs[0]]->value;
        Matrix dw(n.w->rows(), n.w->cols());
        gemm_tn_accumulate(dy, x, dw);
        add_into(grads.accumulator(n.w->values()), dw);
        add_column_sums(grads.accumulator(*n.b), dy);
        if (Matrix* dx = grad_of(n.inputs[0])) gemm_nn_accumulate(dy, *n.w, *dx);
        break;
      }
      case Kind::kActivation: {
        if (Matrix* dx = grad_of(n.inputs[0]))
          for (std::size_t k = 0; k < dy.size(); ++k)
            dx->data()[k] += dy.data()[k] * derivative_from_output(n.act, n.value.data()[k]);
        break;
      }
      case Kind::kGru: {
        const GruCell& cell = *n.cell;
        const Matrix& h = nodes_[n.inputs[0]]->value;
        const Matrix& x = nodes_[n.inputs[1]]->value;
        const GruCache& c = n.cache;
        const std::size_t total = dy.size();
        Matrix dz(h.rows(), h.cols()), dcpre(h.rows(), h.cols());
        Matrix dh_local(h.rows(), h.cols());
        for (std::size_t k = 0; k < total; ++k) {
          const double z = c.z.data()[k];
          const double cand = c.c.data()[k];
          const double d = dy.data()[k];
          dz.data()[k] = d * (cand - h.data()[k]);
          dcpre.data()[k] = d * z * (1.0 - cand * cand);
          dh_local.data()[k] = d * (1.0 - z);
        }
        gate_backward(cell.candidate, dcpre, x, c.rh, grads);
        Matrix drh(h.rows(), h.cols());
        gemm_nn_accumulate(dcpre, cell.candidate.w_h, drh);
        Matrix dzpre(h.rows(), h.cols()), drpre(h.rows(), h.cols());
        for (std::size_t k = 0; k < total; ++k) {
          const double z = c.z.data()[k];
          const double r = c.r.data()[k];
          dh_local.data()[k] += drh.data()[k] * r;
          drpre.data()[k] = drh.data()[k] * h.data()[k] * r * (1.0 - r);
          dzpre.data()[k] = dz.data()[k] * z * (1.0 - z);
        }
        gate_backward(cell.update, dzpre, x, h, grads);
        gate_backward(cell.reset, drpre, x, h, grads);
        if (Matrix* dh = grad_of(n.inputs[0])) {
          gemm_nn_accumulate(dzpre, cell.update.w_h, dh_local);
          gemm_nn_accumulate(drpre, cell.reset.w_h, dh_local);
          for (std::size_t k = 0; k < total; ++k) dh->data()[k] += dh_local.data()[k];
        }
        if (Matrix* dx = grad_of(n.inputs[1])) {
          gemm_nn_accumulate(dcpre, cell.candidate.w_x, *dx);
          gemm_nn_accumulate(dzpre, cell.update.w_x, *dx);
          gemm_nn_accumulate(drpre, cell.reset.w_x, *dx);
        }
        break;
      }
      case Kind::kGather: {
        if (Matrix* dq = grad_of(n.inputs[0]))
          for (std::size_t b = 0; b < n.columns.size(); ++b) (*dq)(b, n.columns[b]) += dy(b, 0);
        break;
      }
      case Kind::kMse: {
        if (Matrix* dp = grad_of(n.inputs[0])) {
          const Matrix& p = nodes_[n.inputs[0]]->value;
          const double scale = dy(0, 0) * 2.0 / n.normalizer;
          for (std::size_t b = 0; b < p.rows(); ++b)
            (*dp)(b, 0) += scale * n.mask[b] * (p(b, 0) - n.target[b]);
        }
        break;
      }
      case Kind::kBce: {
        if (Matrix* dl = grad_of(n.inputs[0])) {
          const Matrix& l = nodes_[n.inputs[0]]->value;
          const double scale = dy(0, 0) / n.normalizer;
          for (std::size_t b = 0; b < l.rows(); ++b)
            (*dl)(b, 0) += scale * (sigmoid(l(b, 0)) - n.target[b]);
        }
        break;
      }
      case Kind::kSum: {
        for (std::size_t in : n.inputs)
          if (Matrix* d = grad_of(in)) (*d)(0, 0) += dy(0, 0);
        break;
      }
    }
  }
  return grads;
}

}  // namespace rnnprove::nn
