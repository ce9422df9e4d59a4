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
#include <span>
#include <string_view>
#include <vector>

namespace rnnprove::nn {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

  void fill(double v);
  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Throws DimensionError with `context` in the message when `ok` is false.
void require_dims(bool ok, std::string_view context);

// Every kernel accumulates each output element left to right over the
// reduction index starting from the element's current value. The scalar and
// batched variants therefore produce bitwise-identical results.

// out[o] += sum_i w(o, i) * x[i]
void matvec_accumulate(const Matrix& w, std::span<const double> x,
                       std::span<double> out);
// y += x * w^T   (x: B x in, w: out x in, y: B x out)
void gemm_nt_accumulate(const Matrix& x, const Matrix& w, Matrix& y);
// dx += dy * w   (dy: B x out, w: out x in, dx: B x in)
void gemm_nn_accumulate(const Matrix& dy, const Matrix& w, Matrix& dx);
// dw += dy^T * x (dy: B x out, x: B x in, dw: out x in)
void gemm_tn_accumulate(const Matrix& dy, const Matrix& x, Matrix& dw);
// y[b][o] += bias[o]
void add_row_bias(Matrix& y, std::span<const double> bias);

bool all_finite(std::span<const double> values);

}  // namespace rnnprove::nn
