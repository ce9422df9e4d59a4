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

#include "rnnprove/tensor_nn/matrix.hpp"

#include <cmath>
#include <string>

#include "rnnprove/common/errors.hpp"

namespace rnnprove::nn {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw DimensionError("Matrix: data length " + std::to_string(data_.size()) +
                         " != rows*cols " + std::to_string(rows * cols));
}

void Matrix::fill(double v) {
  for (double& x : data_) x = v;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void require_dims(bool ok, std::string_view context) {
  if (!ok) throw DimensionError(std::string("dimension mismatch: ") + std::string(context));
}

void matvec_accumulate(const Matrix& w, std::span<const double> x,
                       std::span<double> out) {
  require_dims(w.cols() == x.size() && w.rows() == out.size(), "matvec");
  const std::size_t in = w.cols();
  for (std::size_t o = 0; o < w.rows(); ++o) {
    const double* wr = w.data() + o * in;
    double acc = out[o];
    for (std::size_t i = 0; i < in; ++i) acc += wr[i] * x[i];
    out[o] = acc;
  }
}

void gemm_nt_accumulate(const Matrix& x, const Matrix& w, Matrix& y) {
  require_dims(x.cols() == w.cols() && y.rows() == x.rows() && y.cols() == w.rows(),
               "gemm x*w^T");
  const Matrix wt = w.transposed();
  const std::size_t in = x.cols();
  const std::size_t out = w.rows();
  for (std::size_t b = 0; b < x.rows(); ++b) {
    double* yr = y.data() + b * out;
    const double* xr = x.data() + b * in;
    for (std::size_t i = 0; i < in; ++i) {
      const double xi = xr[i];
      const double* wtr = wt.data() + i * out;
      for (std::size_t o = 0; o < out; ++o) yr[o] += wtr[o] * xi;
    }
  }
}

void gemm_nn_accumulate(const Matrix& dy, const Matrix& w, Matrix& dx) {
  require_dims(dy.cols() == w.rows() && dx.rows() == dy.rows() && dx.cols() == w.cols(),
               "gemm dy*w");
  const std::size_t in = w.cols();
  const std::size_t out = w.rows();
  for (std::size_t b = 0; b < dy.rows(); ++b) {
    double* dxr = dx.data() + b * in;
    const double* dyr = dy.data() + b * out;
    for (std::size_t o = 0; o < out; ++o) {
      const double g = dyr[o];
      if (g == 0.0) continue;
      const double* wr = w.data() + o * in;
      for (std::size_t i = 0; i < in; ++i) dxr[i] += g * wr[i];
    }
  }
}

void gemm_tn_accumulate(const Matrix& dy, const Matrix& x, Matrix& dw) {
  require_dims(dy.rows() == x.rows() && dw.rows() == dy.cols() && dw.cols() == x.cols(),
               "gemm dy^T*x");
  const std::size_t in = x.cols();
  const std::size_t out = dy.cols();
  for (std::size_t b = 0; b < dy.rows(); ++b) {
    const double* xr = x.data() + b * in;
    const double* dyr = dy.data() + b * out;
    for (std::size_t o = 0; o < out; ++o) {
      const double g = dyr[o];
      if (g == 0.0) continue;
      double* dwr = dw.data() + o * in;
      for (std::size_t i = 0; i < in; ++i) dwr[i] += g * xr[i];
    }
  }
}

void add_row_bias(Matrix& y, std::span<const double> bias) {
  require_dims(y.cols() == bias.size(), "row bias");
  for (std::size_t b = 0; b < y.rows(); ++b) {
    double* yr = y.data() + b * y.cols();
    for (std::size_t o = 0; o < bias.size(); ++o) yr[o] += bias[o];
  }
}

bool all_finite(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace rnnprove::nn
